"""Galois rings GR(p^t, f) and CRT residue systems over the primes dividing M.

A :class:`GaloisRing` is (Z/p^t)[x]/(G) with G a monic lift of the smallest
irreducible degree-f polynomial over F_p, f = ord(p mod n0).  It carries a
primitive n0-th root of unity ``zeta``: the first power x**((q-1)/n0) of
exact order n0 in the residue field, Hensel-lifted to level t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import sympy
from sympy import factorint, isprime, n_order

from .quadfield import Ideal, QuadInt, Split, residue_embedding, splitting_type


def _digits(i, p, f):
    out = []
    for _ in range(f):
        i, r = divmod(i, p)
        out.append(r)
    return tuple(out)


def _smallest_irreducible(p, f):
    x = sympy.Symbol("x")
    for i in range(p ** f):
        low = _digits(i, p, f)
        poly = sympy.Poly([1] + list(reversed(low)), x, modulus=p)
        if poly.is_irreducible:
            return low
    raise RuntimeError(f"no irreducible polynomial of degree {f} mod {p}")


@dataclass(frozen=True, eq=False)
class GaloisRing:
    p: int
    t: int
    n0: int
    modulus_poly: tuple  # low coefficients of the monic degree-f modulus
    zeta: "GRElement" = field(default=None, repr=False)

    @property
    def degree(self):
        return len(self.modulus_poly)

    @property
    def q(self):
        return self.p ** self.degree

    @property
    def pt(self):
        return self.p ** self.t

    @property
    def unit_order(self):
        return self.q ** (self.t - 1) * (self.q - 1)

    def __eq__(self, other):
        return (isinstance(other, GaloisRing) and
                (self.p, self.t, self.n0, self.modulus_poly) ==
                (other.p, other.t, other.n0, other.modulus_poly) and
                self.zeta.coeffs == other.zeta.coeffs)

    def __hash__(self):
        return hash((self.p, self.t, self.n0, self.modulus_poly))

    def __call__(self, coeffs):
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        coeffs = tuple(c % self.pt for c in coeffs) + (0,) * (self.degree - len(coeffs))
        return GRElement(self, coeffs)

    def from_int(self, n):
        if isinstance(n, Fraction):
            if n.denominator % self.p == 0:
                raise ValueError(f"{n} is not integral at {self.p}")
            return self(n.numerator) * self(n.denominator).inverse()
        return self(n % self.pt)

    @cached_property
    def one(self):
        return self(1)

    @cached_property
    def zero(self):
        return self(0)

    def _mul(self, u, v):
        f, m, g = self.degree, self.pt, self.modulus_poly
        prod = [0] * (2 * f - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    prod[i + j] += ui * vj
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k]
            if c:
                for j in range(f):
                    prod[k - f + j] -= c * g[j]
        return tuple(c % m for c in prod[:f])

    def root_of_unity(self, order, k=1):
        if self.n0 % order:
            raise ValueError(f"ring has no primitive {order}-th root of unity (n0={self.n0})")
        return self.zeta ** ((self.n0 // order) * k % self.n0)

    def reduce_mod_p(self, x):
        return tuple(c % self.p for c in x.coeffs)

    def dlog_zeta(self, x):
        """k in [0, n0) with zeta**k == x, or None."""
        cur = self.one
        for k in range(self.n0):
            if cur == x:
                return k
            cur = cur * self.zeta
        return None

    def teichmuller(self, x):
        return x ** (self.q ** (self.t - 1))

    def canonical_root(self, r, c):
        """The c-th root of the unit r with minimal Teichmuller exponent.

        r = zeta**j * v with v = 1 mod p; the root is zeta**j' * v**(1/c) where
        j' is the least solution of c*j' = j (mod n0).
        """
        if math.gcd(c, self.p) != 1:
            raise ValueError("root order must be prime to p")
        if not r.is_unit():
            raise ValueError("cannot extract roots of a non-unit residue")
        w = self.teichmuller(r)
        j = self.dlog_zeta(w)
        if j is None:
            raise ValueError(f"Teichmuller part of {r} is not a power of zeta (n0={self.n0})")
        g = math.gcd(c, self.n0)
        if j % g:
            raise ValueError(f"{r} has no {c}-th root in this ring")
        step = self.n0 // g
        j0 = (j // g) * pow(c // g, -1, step) % step
        v = r * w.inverse()
        if self.t > 1:
            v = v ** pow(c, -1, self.p ** (self.t - 1))
        root = self.zeta ** j0 * v
        assert root ** c == r
        return root


@dataclass(frozen=True, eq=False)
class GRElement:
    ring: GaloisRing
    coeffs: tuple

    def _co(self, other):
        if isinstance(other, GRElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.from_int(other)
        return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        m = self.ring.pt
        return GRElement(self.ring, tuple((a + b) % m for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        m = self.ring.pt
        return GRElement(self.ring, tuple(-a % m for a in self.coeffs))

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        if self.ring.degree == 1:
            return GRElement(self.ring, ((self.coeffs[0] * o.coeffs[0]) % self.ring.pt,))
        return GRElement(self.ring, self.ring._mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        if self.ring.degree == 1:
            return GRElement(self.ring, (pow(self.coeffs[0], e, self.ring.pt),))
        result, base = self.ring.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    def is_unit(self):
        return any(c % self.ring.p for c in self.coeffs)

    def inverse(self):
        if not self.is_unit():
            raise ZeroDivisionError("element is not a unit")
        if self.ring.degree == 1:
            return GRElement(self.ring, (pow(self.coeffs[0], -1, self.ring.pt),))
        return self ** (self.ring.unit_order - 1)

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __repr__(self):
        if self.ring.degree == 1:
            return f"{self.coeffs[0]} mod {self.ring.pt}"
        return f"{list(self.coeffs)} mod {self.ring.pt}"


def _exact_order(x, n, one):
    if x ** n != one:
        return False
    return all(x ** (n // ell) != one for ell in factorint(n))


def galois_ring_new(p, t, n0):
    if p == 2 or not isprime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if t < 1:
        raise ValueError("t must be positive")
    if n0 < 1 or math.gcd(n0, p) != 1:
        raise ValueError(f"n0={n0} must be coprime to p={p}")
    f = int(n_order(p, n0)) if n0 > 1 else 1
    g = _smallest_irreducible(p, f)
    field_ring = GaloisRing(p, 1, n0, g)
    # x**((q-1)/n0) always has order dividing n0; take the first of exact order
    cofactor = (p ** f - 1) // n0
    z0 = next(y for y in (field_ring(_digits(i, p, f)) ** cofactor for i in range(1, p ** f))
              if _exact_order(y, n0, field_ring.one))
    ring = GaloisRing(p, t, n0, g)
    z = ring(z0.coeffs)
    # Newton iteration on z**n0 - 1 (simple root since p does not divide n0)
    for _ in range(t + 1):
        fz = z ** n0 - 1
        if fz.is_zero():
            break
        z = z - fz * (z ** (n0 - 1) * n0).inverse()
    object.__setattr__(ring, "zeta", z)
    assert z ** n0 == ring.one
    return ring


def lift_root_of_unity(R, c, target):
    """The d in [0, c) with zeta_c**d == target, zeta_c = zeta**(n0/c)."""
    if R.n0 % c:
        raise ValueError(f"c={c} does not divide n0={R.n0}")
    if target ** c != R.one:
        raise ValueError(f"{target} is not a {c}-th root of unity")
    zc = R.root_of_unity(c)
    cur = R.one
    for d in range(c):
        if cur == target:
            return d
        cur = cur * zc
    raise ValueError(f"{target} is not a power of zeta_{c}")


@dataclass(frozen=True)
class RootOfUnity:
    """zeta_order ** k with zeta_order = exp(2 pi i / order)."""

    order: int
    k: int = 1


def embed_value(R, emb, x):
    if isinstance(x, RootOfUnity):
        return R.root_of_unity(x.order, x.k)
    if isinstance(x, QuadInt):
        return R.from_int(emb(x))
    if isinstance(x, (int, Fraction)):
        return R.from_int(x)
    raise TypeError(f"cannot embed {x!r}")


# --- CRT residue systems ------------------------------------------------------

@dataclass(frozen=True)
class ResidueComponent:
    embedding: object  # ResidueEmbedding
    ring: GaloisRing

    @property
    def p(self):
        return self.embedding.p

    @property
    def t(self):
        return self.embedding.t


@dataclass(frozen=True)
class ResidueSystem:
    """O_L / prod P^t over the primes p^t || M, one Galois ring per prime.

    Elements are :class:`ResidueValue` tuples.  ``K``'s units map through the
    residue embeddings, and each ring's zeta is normalised so that
    zeta**(n0/w_K) is the image of exp(2 pi i / w_K).
    """

    K: object
    M: int
    components: tuple

    def lift(self, v):
        if isinstance(v, ResidueValue):
            return v
        return ResidueValue(self, tuple(embed_value(c.ring, c.embedding, v) for c in self.components))

    @property
    def one(self):
        return self.lift(1)

    @property
    def zero(self):
        return self.lift(0)

    def root_of_unity(self, order, k=1):
        return ResidueValue(self, tuple(c.ring.root_of_unity(order, k) for c in self.components))

    def div(self, a, b):
        return a * b.inverse()

    def anchor_value(self, anchor):
        parts = []
        exact = anchor.exact_root
        for comp in self.components:
            if exact is not None:
                base = embed_value(comp.ring, comp.embedding, exact)
            else:
                m, rho = anchor.exact_part
                if rho is None:
                    rad = anchor.radicand_in(comp.ring, comp.embedding)
                else:
                    rad = embed_value(comp.ring, comp.embedding, rho)
                base = comp.ring.canonical_root(rad, anchor.order // m)
            parts.append(base * comp.ring.root_of_unity(anchor.order, anchor.d))
        return ResidueValue(self, tuple(parts))

    def describe(self):
        return {"modulus": self.M, "primes": [
            {"p": c.p, "t": c.t, "prime": [c.embedding.prime.a, c.embedding.prime.b, c.embedding.prime.s],
             "n0": c.ring.n0} for c in self.components]}


@dataclass(frozen=True, eq=False)
class ResidueValue:
    system: ResidueSystem
    parts: tuple

    def _co(self, other):
        if isinstance(other, ResidueValue):
            return other
        if isinstance(other, (int, Fraction, QuadInt)):
            return self.system.lift(other)
        return None

    def _zip(self, other, op):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return ResidueValue(self.system, tuple(op(a, b) for a, b in zip(self.parts, o.parts)))

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return ResidueValue(self.system, tuple(-a for a in self.parts))

    def __mul__(self, other):
        return self._zip(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __pow__(self, e):
        return ResidueValue(self.system, tuple(a ** e for a in self.parts))

    def inverse(self):
        return ResidueValue(self.system, tuple(a.inverse() for a in self.parts))

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return all(a == b for a, b in zip(self.parts, o.parts))

    def __hash__(self):
        return hash(tuple(a.coeffs for a in self.parts))

    def is_zero(self):
        return all(a.is_zero() for a in self.parts)

    def coords(self):
        return [list(a.coeffs) for a in self.parts]

    def __repr__(self):
        return "(" + ", ".join(repr(a) for a in self.parts) + ")"


def residue_system(K, M, root_order=1, class_exponent=1, conjugate=()):
    """Residue system modulo M using the canonical split prime above each p | M.

    Each ring has n0 = lcm(p - 1, w_K, root_order) * class_exponent, enough to
    hold the finite-type values and c-th roots of Teichmuller units for every
    class order c.  Primes listed in ``conjugate`` use the conjugate prime.
    """
    comps = []
    for p, t in sorted(factorint(M).items()):
        st = splitting_type(K, p)
        if not isinstance(st, Split):
            raise ValueError(f"{p} does not split in {K}")
        if math.gcd(root_order * class_exponent, p) != 1:
            raise ValueError(f"roots of unity of order divisible by {p} are ramified at {p}")
        P = st.conjugate if p in conjugate else st.prime
        n0 = math.lcm(p - 1, K.num_units, root_order) * class_exponent
        comps.append(_component(K, P, t, n0))
    return ResidueSystem(K, M, tuple(comps))


def residue_system_from_description(K, desc):
    """Rebuild the system recorded by :meth:`ResidueSystem.describe`."""
    comps = []
    for entry in desc["primes"]:
        a, b, s = entry["prime"]
        comps.append(_component(K, Ideal(K, a, b, s), entry["t"], entry["n0"]))
    system = ResidueSystem(K, desc["modulus"], tuple(comps))
    if math.prod(c.p ** c.t for c in comps) != system.M:
        raise ValueError("residue description does not cover its modulus")
    return system


def _component(K, P, t, n0):
    emb = residue_embedding(K, P, t)
    ring = galois_ring_new(P.a, t, n0)
    if K.num_units > 2:
        _align_zeta(ring, embed_value(ring, emb, K.unit_generator), K.num_units)
    return ResidueComponent(emb, ring)


def _align_zeta(ring, unit_image, w):
    # smallest j prime to n0 with (zeta**j)**(n0/w) equal to the image of exp(2 pi i/w)
    n0 = ring.n0
    for j in range(1, n0):
        if math.gcd(j, n0) == 1:
            z = ring.zeta ** j
            if z ** (n0 // w) == unit_image:
                object.__setattr__(ring, "zeta", z)
                return
    raise RuntimeError("cannot align zeta with the units of K")
