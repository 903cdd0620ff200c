"""Coefficient-side verification: twisted congruences, CM detection, nebentypus."""

from __future__ import annotations

import math
from dataclasses import dataclass

from sympy import primerange

from .heckechar import nebentypus_of_char
from .quadfield import QuadField, QuadInt, is_fundamental, kronecker
from .residue import ResidueValue, residue_system


@dataclass(frozen=True)
class CongruenceReport:
    passed: bool
    modulus: int
    checked: int
    skipped: int
    first_failure: tuple | None = None  # (n, lhs, rhs)

    def to_json(self):
        ff = None
        if self.first_failure is not None:
            n, lhs, rhs = self.first_failure
            ff = {"n": n, "lhs": _jsonable(lhs), "rhs": _jsonable(rhs)}
        return {"pass": self.passed, "modulus": self.modulus, "checked": self.checked,
                "skipped": self.skipped, "first_failure": ff}


def _jsonable(v):
    if isinstance(v, ResidueValue):
        return v.coords()
    return v


def _reducer(f, h, M, system):
    systems = [F.ring for F in (f, h) if F.ring is not None]
    if systems:
        system = systems[0]
        if any(s != system for s in systems) or system.M != M:
            raise ValueError("residue-valued expansions must share a residue system modulo M")
    needs_field = any(isinstance(a, QuadInt) for F in (f, h) for a in F.coeffs)
    if system is None and needs_field:
        system = residue_system(QuadField.from_disc(f.disc), M)
    if system is None:
        return lambda v: v % M
    return system.lift


def twisted_congruence(f, h, k, M, level=None, bound=None, system=None):
    """Check a_n(f) = n**(k-1) a_n(h) mod M for n <= bound with gcd(n, level*M) = 1.

    Non-rational coefficients are compared in a residue system modulo M
    (by default the canonical split prime above each p | M).
    """
    bound = bound or min(f.bound, h.bound)
    if bound > f.bound or bound > h.bound:
        raise ValueError(f"bound {bound} exceeds expansion coverage ({f.bound}, {h.bound})")
    level = level or math.lcm(f.level, h.level)
    red = _reducer(f, h, M, system)
    checked = skipped = 0
    failure = None
    for n in range(1, bound + 1):
        if math.gcd(n, level * M) != 1:
            skipped += 1
            continue
        checked += 1
        lhs = red(f[n])
        rhs = red(h[n]) * pow(n, k - 1, M)
        if not isinstance(rhs, ResidueValue):
            rhs %= M
        if lhs != rhs and failure is None:
            failure = (n, lhs, rhs)
    return CongruenceReport(failure is None, M, checked, skipped, failure)


@dataclass(frozen=True)
class CMReport:
    is_cm: bool
    witness: int | None = None

    def __bool__(self):
        return self.is_cm


def _is_zero(a):
    return a.is_zero() if isinstance(a, ResidueValue) else a == 0


def detect_cm(F, D, bound=None):
    """a_q(F) = 0 for every prime q <= bound, q prime to the level, inert in Q(sqrt(D))."""
    if D >= 0 or not is_fundamental(D):
        raise ValueError(f"{D} is not a negative fundamental discriminant")
    bound = bound or F.bound
    if bound > F.bound:
        raise ValueError(f"bound {bound} exceeds expansion coverage {F.bound}")
    for q in primerange(2, bound + 1):
        if F.level % q and kronecker(D, q) == -1 and not _is_zero(F[q]):
            return CMReport(False, int(q))
    return CMReport(True)


def nebentypus_of(psi):
    return nebentypus_of_char(psi)
