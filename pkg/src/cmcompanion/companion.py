"""Companion weights, ordinarity, and construction of companion CM forms mod M.

Given psi of infinity exponent k - 1 (so f = f_psi has weight k) and an odd
M whose prime factors split in K, the companion psi' has infinity exponent
k' - 1 with k + k' = 2 mod phi(M).  Away from M and the level,
psi'((alpha)) / phi((alpha)) = alpha**(k + k' - 2) = 1 mod M, where
phi(I) = psi(conj I) / N(I)**(k-1).  The only freedom left is the root of
unity twist d_i on each class group generator, chosen so that psi' and phi
agree on the representatives modulo every prime above M.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from sympy import factorint, isprime, totient

from .classgroup import class_group
from .congruence import twisted_congruence
from .errors import AnchorConflictError, HypothesisError
from .heckechar import Anchor, ConjInverse, eval_ideal, hecke_char_new, unit_compatibility
from .qexpansion import QExpansion, lift_expansion, synthesize
from .quadfield import QuadInt, Split, splitting_type
from .residue import ResidueValue, lift_root_of_unity, residue_system
from .rings import ExactRing


def _check_modulus(M):
    if M < 3 or M % 2 == 0:
        raise ValueError(f"M must be an odd integer >= 3, got {M}")


def companion_weight_modM(k, M):
    """Smallest k' >= 2 with k + k' = 2 mod phi(M)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    _check_modulus(M)
    phi = int(totient(M))
    return 2 + (-k) % phi


def companion_weight_p_power(k, p, m):
    """Smallest k_m >= 2 with k_m + k - 2 = 0 mod p**(m-1) * (p - 1)."""
    if k < 2 or m < 1:
        raise ValueError("need k >= 2 and m >= 1")
    if p == 2 or not isprime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    return 2 + (-k) % (p ** (m - 1) * (p - 1))


def is_ordinary_at(F, p):
    """True iff a_p(F) is a unit at every prime above p that the coefficients see."""
    if p > F.bound:
        raise ValueError(f"a_{p} is beyond the expansion bound {F.bound}")
    a = F[p]
    if isinstance(a, ResidueValue):
        parts = [x for c, x in zip(a.system.components, a.parts) if c.p == p]
        if not parts:
            raise ValueError(f"residue coefficients carry no information at {p}")
        return all(x.is_unit() for x in parts)
    if isinstance(a, QuadInt):
        # a unit at every prime above p iff p does not divide the norm
        return a.norm() % p != 0
    return a % p != 0


# --- planning ---------------------------------------------------------------------

@dataclass(frozen=True)
class PrimeData:
    p: int
    t: int
    prime: object  # Ideal above p
    embedding: object
    ring: object  # GaloisRing


@dataclass(frozen=True)
class CompanionPlan:
    M: int
    k: int
    k_prime: int
    factors: tuple  # ((p, t), ...)
    primes: tuple  # PrimeData per p | M
    system: object  # ResidueSystem modulo M
    conjugate: tuple = ()  # primes where the conjugate prime is used

    def describe(self):
        return {"M": self.M, "k": self.k, "k_prime": self.k_prime, "conjugate": list(self.conjugate),
                "primes": [{"p": d.p, "t": d.t, "prime": [d.prime.a, d.prime.b, d.prime.s],
                            "omega": d.embedding.s, "n0": d.ring.n0, "degree": d.ring.degree}
                           for d in self.primes]}


def plan_companion(psi, k, M, conjugate=()):
    """Check the hypotheses of the construction and set up the residue rings."""
    _check_modulus(M)
    K = psi.K
    if K.D in (-3, -4):
        raise HypothesisError("disc", f"D = {K.D} has extra units; construction assumes D != -3, -4")
    if psi.u != k - 1:
        raise HypothesisError("weight", f"character has infinity exponent {psi.u}, expected k - 1 = {k - 1}")
    k_prime = companion_weight_modM(k, M)
    factors = tuple(sorted(factorint(M).items()))
    for p, _ in factors:
        st = splitting_type(K, p)
        if not isinstance(st, Split):
            kind = type(st).__name__.lower()
            raise HypothesisError("ordinarity", f"{p} is {kind} in {K}; f cannot be {p}-ordinary")
    h = psi.class_group.h if psi.class_group is not None else 1
    if math.gcd(h, M) != 1:
        raise HypothesisError("class_number", f"gcd(h_K = {h}, M = {M}) != 1")
    if math.gcd(psi.level, M) != 1:
        raise HypothesisError("level", f"gcd(|D| N(m) = {psi.level}, M = {M}) != 1")
    ft = psi.finite_type
    if math.gcd(ft.order, M) != 1 and not ft.is_exact():
        raise HypothesisError("finite_type", f"finite type values of order {ft.order} are not prime to M")
    if not unit_compatibility(ft.conjugate(), k_prime - 1):
        raise HypothesisError("parity", f"finite type is incompatible with infinity exponent {k_prime - 1}")
    if not psi.is_exact():
        for rep in psi.class_group.reps:
            if math.gcd(rep.norm(), M) != 1:
                raise HypothesisError(
                    "class_representatives",
                    f"representative {rep} meets M; build the class group with coprime_to=M")
    orders = psi.class_group.orders if psi.class_group is not None else ()
    c_exp = math.lcm(1, *orders)
    root_order = ft.order if math.gcd(ft.order, M) == 1 else 1
    system = residue_system(K, M, root_order=root_order, class_exponent=c_exp, conjugate=conjugate)
    primes = tuple(PrimeData(c.p, c.t, c.embedding.prime, c.embedding, c.ring) for c in system.components)
    return CompanionPlan(M, k, k_prime, factors, primes, system, tuple(conjugate))


# --- anchor selection -----------------------------------------------------------------

@dataclass(frozen=True)
class PrimeCertificate:
    p: int
    t: int
    target: list  # phi(rep) in R_p, coefficient vector
    base: list  # untwisted anchor value of psi' in R_p
    d: int


@dataclass(frozen=True)
class AnchorCertificate:
    rep: object
    order: int
    gen: QuadInt
    d: int
    primes: tuple

    def to_json(self):
        return {"rep": [self.rep.a, self.rep.b, self.rep.s], "order": self.order,
                "gen": [self.gen.x, self.gen.y], "d": self.d,
                "primes": [{"p": c.p, "t": c.t, "d": c.d, "target": c.target, "base": c.base}
                           for c in self.primes]}


@dataclass(frozen=True)
class Conflict:
    rep: object
    order: int
    p: int
    d_first: int
    q: int
    d_second: int


def _source_values(psi, system):
    """I -> psi(I) in the residue system, computed exactly first when possible."""
    if psi.is_exact():
        exact = ExactRing(psi.K)
        return lambda I: system.lift(eval_ideal(psi, I, exact))
    return lambda I: eval_ideal(psi, I, system)


def select_anchor_exponents(plan, psi, cg):
    """One certificate per generator of ``cg``; raises AnchorConflictError on disagreement."""
    system = plan.system
    ft = psi.finite_type.conjugate()
    u = plan.k_prime - 1
    source = _source_values(psi, system)
    out = []
    for rep, c, gen in zip(cg.reps, cg.orders, cg.gens):
        scaled = source(rep.conj())
        target = system.div(scaled, system.lift(rep.norm() ** psi.u))
        base = system.anchor_value(Anchor(rep, c, gen, ft.exponent(gen), ft.order, u, 0))
        certs = []
        for comp, tv, bv in zip(system.components, target.parts, base.parts):
            d = lift_root_of_unity(comp.ring, c, tv / bv)
            certs.append(PrimeCertificate(comp.p, comp.t, list(tv.coeffs), list(bv.coeffs), d))
        first = certs[0]
        for other in certs[1:]:
            if other.d != first.d:
                raise AnchorConflictError(Conflict(rep, c, first.p, first.d, other.p, other.d))
        out.append(AnchorCertificate(rep, c, gen, first.d, tuple(certs)))
    return out


# --- construction --------------------------------------------------------------------------

@dataclass(frozen=True)
class CompanionResult:
    plan: CompanionPlan
    psi: object
    psi_prime: object
    f: QExpansion
    h: QExpansion
    certificates: tuple
    report: object  # CongruenceReport

    @property
    def weight(self):
        return self.plan.k_prime

    @property
    def d(self):
        return tuple(c.d for c in self.certificates)

    def to_json(self):
        return {"source_weight": self.plan.k, "weight": self.plan.k_prime, "modulus": self.plan.M,
                "plan": self.plan.describe(), "d": list(self.d),
                "certificates": [c.to_json() for c in self.certificates],
                "congruence": self.report.to_json()}


def _conjugate_choices(primes):
    # canonical primes first, then ever larger sets of conjugated primes
    for r in range(len(primes) + 1):
        yield from itertools.combinations(primes, r)


def construct_companion(psi, k, M, bound=200, conjugate=None):
    """Build psi', synthesize h = f_{psi'} and verify a_n(f) = n**(k-1) a_n(h) mod M.

    ``conjugate`` lists the primes p | M at which the conjugate of the
    canonical prime above p is used.  When it is None, the canonical choice is
    tried first and, if the twist exponents conflict across primes, the other
    choices are searched in a fixed order; the first conflict is raised if none
    works.
    """
    if conjugate is not None:
        choices = [tuple(conjugate)]
    else:
        plan_companion(psi, k, M)  # hypotheses first, so errors are not masked
        choices = list(_conjugate_choices([p for p, _ in factorint(M).items()]))
    K = psi.K
    ft = psi.finite_type.conjugate()
    cg = class_group(K, ft.modulus, coprime_to=M)
    first_error = None
    for conj in choices:
        plan = plan_companion(psi, k, M, conj)
        try:
            certs = tuple(select_anchor_exponents(plan, psi, cg))
        except AnchorConflictError as e:
            first_error = first_error or e
            continue
        break
    else:
        first_error.attempts = choices
        raise first_error
    psi_prime = hecke_char_new(K, ft, plan.k_prime - 1, cg, [c.d for c in certs])
    if psi.is_exact() and psi_prime.is_exact():
        f = synthesize(psi, bound)
        h = synthesize(psi_prime, bound)
    else:
        system = plan.system
        f = lift_expansion(synthesize(psi, bound), system) if psi.is_exact() else synthesize(psi, bound, system)
        h = synthesize(psi_prime, bound, system)
    report = twisted_congruence(f, h, k, M, level=psi.level, bound=bound)
    return CompanionResult(plan, psi, psi_prime, f, h, certs, report)
