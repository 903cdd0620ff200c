"""q-expansions of CM forms attached to Hecke characters.

Coefficients are ``int`` when rational, :class:`QuadInt` when they lie in
Z[omega] but not in Z, and :class:`ResidueValue` when computed in a residue
system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from sympy import primerange

from .heckechar import Nebentypus, eval_ideal
from .quadfield import QuadField, QuadInt, ideal_factorizations
from .residue import ResidueSystem, ResidueValue
from .rings import ExactRing


@dataclass(frozen=True)
class QExpansion:
    weight: int
    level: int
    disc: int
    nebentypus: Nebentypus
    coeffs: tuple  # a_1 .. a_bound
    character: object = field(default=None, compare=False, repr=False)
    ring: ResidueSystem | None = field(default=None, repr=False)

    @property
    def bound(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        if not 1 <= n <= self.bound:
            raise IndexError(f"coefficient a_{n} outside 1..{self.bound}")
        return self.coeffs[n - 1]

    def coeff_ring(self):
        if self.ring is not None:
            return self.ring
        if self.character is not None:
            return ExactRing(self.character.K)
        return None

    def is_exact(self):
        return self.ring is None

    def truncate(self, bound):
        if bound > self.bound:
            raise ValueError(f"expansion only known to {self.bound}")
        return QExpansion(self.weight, self.level, self.disc, self.nebentypus,
                          self.coeffs[:bound], self.character, self.ring)

    def replace_coeff(self, n, value):
        c = list(self.coeffs)
        c[n - 1] = value
        return QExpansion(self.weight, self.level, self.disc, self.nebentypus,
                          tuple(c), self.character, self.ring)

    def __str__(self):
        terms = []
        for n, a in enumerate(self.coeffs[:10], 1):
            if a != 0:
                terms.append(f"({a})*q^{n}" if isinstance(a, QuadInt) else f"{a}*q^{n}")
        return " + ".join(terms) + " + ..."


def _normalize(v):
    if isinstance(v, QuadInt) and v.y == 0:
        return v.x
    return v


def synthesize(psi, bound, ring=None):
    """q-expansion sum_n (sum_{N a = n} psi(a)) q^n up to ``bound``."""
    if psi.u < 1:
        raise ValueError("synthesis needs infinity exponent u >= 1")
    if bound < 1:
        raise ValueError("bound must be positive")
    ring = ring or psi.default_ring()
    K = psi.K
    cache = {}

    def value(P):
        if P not in cache:
            cache[P] = eval_ideal(psi, P, ring)
        return cache[P]

    coeffs = []
    zero = ring.zero
    for n in range(1, bound + 1):
        total = zero
        for fac in ideal_factorizations(K, n, psi.modulus):
            term = ring.one
            for P, e in fac:
                term = term * value(P) ** e
            total = total + term
        coeffs.append(_normalize(total) if isinstance(ring, ExactRing) else total)
    return QExpansion(psi.weight, psi.level, K.D, psi.nebentypus(), tuple(coeffs), psi,
                      ring if isinstance(ring, ResidueSystem) else None)


def lift_expansion(F, system):
    """Reduce every coefficient of an exact expansion into a residue system."""
    if F.ring is not None:
        raise ValueError("expansion is already residue-valued")
    return QExpansion(F.weight, F.level, F.disc, F.nebentypus,
                      tuple(system.lift(a) for a in F.coeffs), F.character, system)


def theta_power(F, r):
    """Apply (q d/dq)**r: a_n -> n**r a_n, weight + 2r."""
    if r < 0:
        raise ValueError("r must be non-negative")
    coeffs = tuple(_normalize(n ** r * a) if not isinstance(a, ResidueValue) else a * n ** r
                   for n, a in enumerate(F.coeffs, 1))
    return QExpansion(F.weight + 2 * r, F.level, F.disc, F.nebentypus, coeffs, F.character, F.ring)


@dataclass(frozen=True)
class HeckeReport:
    ok: bool
    checked: int
    first_violation: tuple | None = None  # (kind, indices)


def hecke_consistency(F, primes=None, bound=None):
    """Check multiplicativity and the prime-power recursion up to ``bound``."""
    bound = min(bound or F.bound, F.bound)
    ring = F.coeff_ring()
    if ring is None:
        ring = ExactRing(QuadField.from_disc(F.disc))
    a = [None] + [ring.lift(c) if not isinstance(c, ResidueValue) else c for c in F.coeffs[:bound]]
    checked = 0
    if a[1] != 1:
        return HeckeReport(False, checked, ("normalization", (1,)))
    for m in range(2, bound + 1):
        for n in range(m + 1, bound // m + 1):
            if math.gcd(m, n) == 1:
                checked += 1
                if a[m * n] != a[m] * a[n]:
                    return HeckeReport(False, checked, ("multiplicative", (m, n)))
    plist = primes if primes is not None else list(primerange(2, bound + 1))
    k = F.weight
    for p in plist:
        if F.level % p == 0 or p > bound:
            continue
        eps = F.nebentypus(p, ring) * p ** (k - 1)
        prev, cur, r = ring.one, a[p], 1
        while p ** (r + 1) <= bound:
            nxt = a[p] * cur - eps * prev
            checked += 1
            if a[p ** (r + 1)] != nxt:
                return HeckeReport(False, checked, ("recursion", (p, r + 1)))
            prev, cur, r = cur, a[p ** (r + 1)], r + 1
    return HeckeReport(True, checked)
