"""Hecke characters of imaginary quadratic fields.

A character psi of modulus m is given by a finite type chi on (O_K/m)^*, an
infinity exponent u (psi((alpha)) = chi(alpha) * alpha**u) and, when the class
number exceeds one, its values on the class group representatives.  Those
values are stored formally as c-th roots of chi(alpha_i) * alpha_i**u twisted
by zeta_c**d; a concrete coefficient ring decides how the root is realised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ExactBackendError, NotCoprimeError, UnitCompatibilityError
from .quadfield import Ideal, QuadInt, is_principal, kronecker, require_coprime
from .rings import ExactRing, exact_root


# --- finite types -------------------------------------------------------------

def _unit_residues(modulus):
    K = modulus.K
    basis = list(modulus.basis)
    out = []
    for x0 in range(modulus.s * modulus.a):
        for y0 in range(modulus.s):
            if Ideal.from_generators(K, [K(x0, y0)] + basis).is_unit():
                out.append((x0, y0))
    return out


@dataclass(frozen=True, eq=False)
class FiniteType:
    """A character of (O_K/modulus)^* with values zeta_order**k."""

    K: object
    modulus: Ideal
    generators: tuple
    images: tuple
    order: int
    table: dict = field(repr=False)

    def __eq__(self, other):
        return (isinstance(other, FiniteType) and self.modulus == other.modulus
                and self.order == other.order and self.table == other.table)

    def __hash__(self):
        return hash((self.modulus, self.order, tuple(sorted(self.table.items()))))

    def exponent(self, alpha):
        key = self.modulus.reduce(alpha)
        try:
            return self.table[key]
        except KeyError:
            raise NotCoprimeError(f"{alpha} is not coprime to the modulus {self.modulus}") from None

    def is_trivial(self):
        return not any(self.table.values())

    def is_exact(self):
        w = self.K.num_units
        return all((k * w) % self.order == 0 for k in self.table.values())

    def conjugate(self):
        """The finite type alpha -> chi(conj(alpha)) on the conjugate modulus."""
        return finite_type_from_values(
            self.K, self.modulus.conj(),
            [(g.conj(), k) for g, k in zip(self.generators, self.images)], self.order)


def finite_type_from_values(K, modulus, assignments, order=2):
    """Build chi from generator images; ``assignments`` is a list of (alpha, k) meaning chi(alpha) = zeta_order**k."""
    modulus = modulus or K.unit_ideal
    assignments = [(K.coerce(g), k % order) for g, k in assignments]
    if modulus.is_unit() and assignments:
        raise ValueError("the unit group modulo (1) is trivial; nothing to assign")
    one = modulus.reduce(K(1))
    table = {one: 0}
    for g, _ in assignments:
        if not Ideal.from_generators(K, [g] + list(modulus.basis)).is_unit():
            raise NotCoprimeError(f"generator {g} is not a unit modulo {modulus}")
    frontier = [K(1)]
    while frontier:
        nxt = []
        for x in frontier:
            v = table[modulus.reduce(x)]
            for g, k in assignments:
                y = x * g
                ky = modulus.reduce(y)
                vy = (v + k) % order
                if ky not in table:
                    table[ky] = vy
                    nxt.append(K(*ky))
                elif table[ky] != vy:
                    raise ValueError(f"images violate a relation among the generators at {K(*ky)}")
        frontier = nxt
    size = len(_unit_residues(modulus))
    if len(table) != size:
        raise ValueError(f"generators span {len(table)} of {size} units modulo {modulus}")
    return FiniteType(K, modulus, tuple(g for g, _ in assignments),
                      tuple(k for _, k in assignments), order, table)


def trivial_finite_type(K):
    return finite_type_from_values(K, K.unit_ideal, [])


def unit_compatibility(ft, u):
    """True iff chi(w) * w**u == 1 for every unit w of O_K."""
    w = ft.K.num_units
    g = ft.K.unit_generator
    k = ft.exponent(g)
    # chi(g) = zeta_e**k and g**u = zeta_w**u
    return (k * w + u * ft.order) % (ft.order * w) == 0


# --- Hecke characters -----------------------------------------------------------

@dataclass(frozen=True)
class Anchor:
    """psi(rep) = (c-th root of chi(gen) * gen**u) * zeta_c**d."""

    rep: Ideal
    order: int
    gen: QuadInt
    chi_exp: int
    chi_order: int
    u: int
    d: int

    @cached_property
    def exact_radicand(self):
        try:
            unit = ExactRing(self.gen.K).root_of_unity(self.chi_order, self.chi_exp)
        except ExactBackendError:
            return None
        return unit * self.gen ** self.u

    @cached_property
    def exact_root(self):
        r = self.exact_radicand
        return None if r is None else exact_root(r, self.order)

    @cached_property
    def exact_part(self):
        """(m, rho) with radicand = rho**m, m | order as large as possible.

        The formal root is then an (order/m)-th root of rho, which keeps its
        images at different primes roots of one and the same factor of
        x**order - radicand.
        """
        r = self.exact_radicand
        if r is None:
            return 1, None
        for m in sorted((m for m in range(1, self.order + 1) if self.order % m == 0), reverse=True):
            rho = exact_root(r, m)
            if rho is not None:
                return m, rho
        return 1, r

    def radicand_in(self, ring, emb):
        return ring.root_of_unity(self.chi_order, self.chi_exp) * ring.from_int(emb(self.gen)) ** self.u

    def is_exact(self):
        if self.exact_root is None:
            return False
        return (self.d * self.gen.K.num_units) % self.order == 0


@dataclass(frozen=True)
class HeckeChar:
    K: object
    finite_type: FiniteType
    u: int
    class_group: object
    anchors: tuple

    @property
    def modulus(self):
        return self.finite_type.modulus

    @property
    def d(self):
        return tuple(a.d for a in self.anchors)

    @property
    def weight(self):
        return self.u + 1

    @property
    def level(self):
        return abs(self.K.D) * self.modulus.norm()

    def is_exact(self):
        return self.finite_type.is_exact() and all(a.is_exact() for a in self.anchors)

    def default_ring(self):
        if not self.is_exact():
            raise ExactBackendError("character values leave Z[omega]; pass a residue system")
        return ExactRing(self.K)

    def nebentypus(self):
        return nebentypus_of_char(self)

    def __call__(self, I, ring=None):
        return eval_ideal(self, I, ring)


def hecke_char_new(K, ft, u, class_group, d=()):
    if u < 0:
        raise ValueError("infinity exponent must be non-negative")
    if not unit_compatibility(ft, u):
        raise UnitCompatibilityError(
            f"finite type and infinity type sigma^{u} disagree on units"
            + (f": psi_inf(-1) != (-1)^{u}" if K.num_units == 2 else ""))
    d = tuple(d)
    if len(d) != len(class_group.reps):
        raise ValueError(f"expected {len(class_group.reps)} twist exponents, got {len(d)}")
    anchors = []
    for rep, c, gen, di in zip(class_group.reps, class_group.orders, class_group.gens, d):
        if not 0 <= di < c:
            raise ValueError(f"twist exponent {di} out of range [0, {c})")
        require_coprime(rep, ft.modulus, "class representative")
        anchors.append(Anchor(rep, c, gen, ft.exponent(gen), ft.order, u, di))
    return HeckeChar(K, ft, u, class_group, tuple(anchors))


def eval_principal(psi, alpha, ring=None):
    """psi((alpha)) = chi(alpha) * alpha**u."""
    ring = ring or psi.default_ring()
    k = psi.finite_type.exponent(alpha)
    return ring.root_of_unity(psi.finite_type.order, k) * ring.lift(alpha) ** psi.u


def eval_ideal(psi, I, ring=None):
    ring = ring or psi.default_ring()
    if not I.coprime(psi.modulus):
        raise NotCoprimeError(f"{I} is not coprime to the modulus {psi.modulus}")
    if not psi.anchors:
        beta = is_principal(I)
        return eval_principal(psi, beta, ring)
    e, beta = psi.class_group.principal_part(I)
    value = eval_principal(psi, beta, ring)
    denom = ring.one
    for anchor, ei in zip(psi.anchors, e):
        if ei:
            value = value * ring.anchor_value(anchor) ** ei
            denom = denom * eval_principal(psi, anchor.gen, ring)
    return ring.div(value, denom)


# --- the conjugate-inverse character ---------------------------------------------

@dataclass(frozen=True)
class ConjInverse:
    """phi(I) = psi(conj I) / N(I)**u.

    phi has infinity type sigma**(-u) and finite type alpha -> chi(conj alpha);
    s**u * (phi(S) + phi(conj S)) = a_s of the form attached to psi.  Values
    generally leave O_K, so evaluation needs a residue system unless the
    division happens to be exact.
    """

    source: HeckeChar

    @property
    def u(self):
        return -self.source.u

    @cached_property
    def finite_type(self):
        return self.source.finite_type.conjugate()

    def scaled(self, I, ring=None):
        """N(I)**u * phi(I) = psi(conj I)."""
        return eval_ideal(self.source, I.conj(), ring)

    def __call__(self, I, ring=None):
        ring = ring or self.source.default_ring()
        num = self.scaled(I, ring)
        return ring.div(num, ring.lift(I.norm() ** self.source.u))

    def conj_inverse(self):
        return self.source


def conj_inverse(psi):
    if isinstance(psi, ConjInverse):
        return psi.source
    return ConjInverse(psi)


# --- nebentypus -------------------------------------------------------------------

@dataclass(frozen=True)
class Nebentypus:
    """Dirichlet character modulo N with values zeta_order**k."""

    modulus: int
    order: int
    values: tuple  # ((m, k), ...) for 1 <= m < N coprime to N

    @cached_property
    def _table(self):
        return dict(self.values)

    def exponent(self, m):
        m %= self.modulus
        if math.gcd(m, self.modulus) != 1:
            return None
        return self._table[m]

    def __call__(self, m, ring):
        k = self.exponent(m)
        return ring.zero if k is None else ring.root_of_unity(self.order, k)

    def conductor(self):
        N = self.modulus
        for f in sorted(x for x in range(1, N + 1) if N % x == 0):
            if all(k == 0 for m, k in self.values if (m - 1) % f == 0):
                return f
        return N

    def is_quadratic(self):
        return all((2 * k) % self.order == 0 for _, k in self.values) and any(k for _, k in self.values)


def nebentypus_of_char(psi):
    D, N = psi.K.D, psi.level
    ft = psi.finite_type
    order = math.lcm(2, ft.order)
    vals = []
    for m in range(1, N):
        if math.gcd(m, N) != 1:
            continue
        k = (order // 2 if kronecker(D, m) == -1 else 0) + ft.exponent(psi.K(m)) * (order // ft.order)
        vals.append((m, k % order))
    return Nebentypus(N, order, tuple(vals))
