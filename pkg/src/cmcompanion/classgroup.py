"""Ideal class groups of imaginary quadratic fields.

Classes are keyed by the reduced form of an ideal, so equality of classes is a
cheap comparison.  Representatives are the smallest-norm ideals of each class
that avoid a given modulus.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from sympy import factorint

from .quadfield import (Ideal, QuadField, ideal_form, ideals_of_norm, is_fundamental,
                        is_principal, reduce_form, require_coprime)


def reduced_forms(D):
    """All reduced forms (a, b, c) of discriminant D < 0."""
    if D >= 0 or not is_fundamental(D):
        raise ValueError(f"{D} is not a negative fundamental discriminant")
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2 or (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (b < 0 and c == a):
                continue
            out.append((a, b, c))
        a += 1
    return sorted(out, key=lambda f: (f[0], abs(f[1]), -f[1]))


def class_number(D):
    return len(reduced_forms(D))


def class_key(I):
    return reduce_form(*ideal_form(I))[0]


@dataclass(frozen=True, eq=False)
class ClassGroup:
    """Cyclic generators of Cl(K) with their orders and principal generators.

    ``reps[i] ** orders[i] == (gens[i])`` and the classes of the reps
    generate Cl(K) as an internal direct product.
    """

    K: QuadField
    modulus: Ideal
    reps: tuple
    orders: tuple
    gens: tuple
    h: int
    _exponents: dict = field(repr=False)

    def __eq__(self, other):
        return (isinstance(other, ClassGroup) and self.K == other.K
                and self.modulus == other.modulus and self.reps == other.reps
                and self.orders == other.orders and self.gens == other.gens)

    def __hash__(self):
        return hash((self.K, self.reps, self.orders))

    def exponents(self, I):
        """Exponent vector e with [I] = prod [reps[i]]**e[i]."""
        return self._exponents[class_key(I)]

    def principal_part(self, I):
        """(e, beta) with I * prod reps[i]**((c_i - e_i) % c_i) = (beta)."""
        e = self.exponents(I)
        J = I
        for rep, c, ei in zip(self.reps, self.orders, e):
            if ei:
                J = J * rep ** (c - ei)
        beta = is_principal(J)
        if beta is None:
            raise RuntimeError(f"class decomposition failed for {I}")
        return e, beta

    @classmethod
    def from_reps(cls, K, modulus, reps, orders):
        reps, orders = tuple(reps), tuple(orders)
        for r in reps:
            require_coprime(r, modulus, "class representative")
        table = {}
        for e in itertools.product(*(range(c) for c in orders)):
            I = K.unit_ideal
            for r, ei in zip(reps, e):
                I = I * r ** ei
            key = class_key(I)
            if key in table:
                raise ValueError("representatives do not generate a direct product")
            table[key] = e
        h = class_number(K.D)
        if len(table) != h:
            raise ValueError(f"representatives generate {len(table)} classes, expected {h}")
        gens = []
        for r, c in zip(reps, orders):
            g = is_principal(r ** c)
            if g is None:
                raise ValueError(f"{r}^{c} is not principal")
            gens.append(g)
        return cls(K, modulus, reps, orders, tuple(gens), h, table)


def _abelian_basis(elements, mul, identity):
    """Basis of a finite abelian group as a list of (element, order), prime-power orders."""
    def power(x, n):
        r = identity
        for _ in range(n):
            r = mul(r, x)
        return r

    def order(x):
        n, y = 1, x
        while y != identity:
            y, n = mul(y, x), n + 1
        return n

    n_total = len(elements)
    orders = {x: order(x) for x in elements}
    basis = []
    for ell in sorted(factorint(n_total)):
        sylow = [x for x in elements if factorint(orders[x]).keys() <= {ell}]
        S = {identity}
        while len(S) < len(sylow):
            best, best_rel = None, 0
            for x in sylow:
                rel, y = 1, x
                while y not in S:
                    y, rel = power(y, ell), rel * ell
                if rel > best_rel:
                    best, best_rel = x, rel
            target = power(best, best_rel)
            root = next((s for s in S if power(s, best_rel) == target), None)
            if root is None:
                raise RuntimeError("abelian basis lifting failed")
            inv_root = power(root, orders[root] - 1)
            y = mul(best, inv_root)
            new_S, cur = set(), identity
            for _ in range(best_rel):
                new_S |= {mul(s, cur) for s in S}
                cur = mul(cur, y)
            S = new_S
            basis.append((y, best_rel))
    return basis


def class_group(K, modulus=None, coprime_to=1):
    """Class group with representatives coprime to ``modulus`` and to the integer ``coprime_to``."""
    modulus = modulus or K.unit_ideal
    avoid = modulus
    if coprime_to != 1:
        avoid = modulus * Ideal(K, 1, 0, coprime_to)
    h = class_number(K.D)
    reps = {}
    n = 1
    while len(reps) < h:
        for I in ideals_of_norm(K, n, avoid):
            reps.setdefault(class_key(I), I)
        n += 1
        if n > 10 ** 6:
            raise RuntimeError("no coprime class representatives found")
    identity = class_key(K.unit_ideal)
    basis = _abelian_basis(list(reps), lambda x, y: class_key(reps[x] * reps[y]), identity)
    # order generators by the norm of their representative
    basis.sort(key=lambda bo: (reps[bo[0]].norm(), reps[bo[0]].sort_key()))
    cg = ClassGroup.from_reps(K, modulus, [reps[b] for b, _ in basis], [o for _, o in basis])
    assert math.prod(cg.orders) == h
    return cg
