"""Imaginary quadratic fields, their integers and integral ideals.

Elements of O_K are stored as ``x + y*omega`` with omega = sqrt(-d) when
D = 0 mod 4 and omega = (1 + sqrt(-d))/2 when D = 1 mod 4.  The complex
embedding is fixed so that omega has positive imaginary part.

Integral ideals are kept in the normal form ``s * (a Z + (b + omega) Z)``
with ``0 <= b < a`` and ``a | N(b + omega)``; the norm is ``s**2 * a``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from sympy import factorint, isprime

from .errors import NotCoprimeError


def kronecker(D, n):
    """Kronecker symbol (D|n)."""
    if n == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    # Jacobi symbol (D|n) for odd n > 0
    a = D % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental(D):
    if D % 4 == 1:
        return _squarefree(abs(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(abs(m))
    return False


def _squarefree(n):
    return n != 0 and all(e == 1 for e in factorint(n).values())


@dataclass(frozen=True)
class QuadField:
    """Q(sqrt(-d)) for squarefree d > 0."""

    d: int

    def __post_init__(self):
        if self.d <= 0 or not _squarefree(self.d):
            raise ValueError(f"d must be a squarefree positive integer, got {self.d}")

    @classmethod
    def from_disc(cls, D):
        if D >= 0 or not is_fundamental(D):
            raise ValueError(f"{D} is not a negative fundamental discriminant")
        return cls(-D if D % 4 == 1 else -D // 4)

    @property
    def D(self):
        return -self.d if (-self.d) % 4 == 1 else -4 * self.d

    @property
    def trace(self):
        # omega**2 = trace*omega - nrm
        return 1 if self.D % 4 == 1 else 0

    @property
    def nrm(self):
        return (1 + self.d) // 4 if self.D % 4 == 1 else self.d

    @property
    def omega(self):
        return QuadInt(self, 0, 1)

    def __call__(self, x, y=0):
        return QuadInt(self, x, y)

    def coerce(self, v):
        if isinstance(v, QuadInt):
            if v.K != self:
                raise ValueError("elements belong to different fields")
            return v
        if isinstance(v, int):
            return QuadInt(self, v, 0)
        return NotImplemented

    @property
    def num_units(self):
        return {-3: 6, -4: 4}.get(self.D, 2)

    @cached_property
    def unit_generator(self):
        """The root of unity exp(2 pi i / w_K) as an element of O_K."""
        if self.D == -4:
            return QuadInt(self, 0, 1)
        if self.D == -3:
            return QuadInt(self, 0, 1)
        return QuadInt(self, -1, 0)

    @cached_property
    def units(self):
        g = self.unit_generator
        out, cur = [], QuadInt(self, 1, 0)
        for _ in range(self.num_units):
            out.append(cur)
            cur = cur * g
        return tuple(out)

    @cached_property
    def unit_ideal(self):
        return Ideal(self, 1, 0)

    def __str__(self):
        return f"Q(sqrt(-{self.d}))"


@dataclass(frozen=True)
class QuadInt:
    K: QuadField
    x: int
    y: int = 0

    def _co(self, other):
        return self.K.coerce(other)

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.K, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(self.K, -self.x, -self.y)

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.K, self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        T, N = self.K.trace, self.K.nrm
        yy = self.y * o.y
        return QuadInt(self.K, self.x * o.x - N * yy,
                       self.x * o.y + self.y * o.x + T * yy)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative powers are not integral")
        result, base = QuadInt(self.K, 1, 0), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.y == 0 and self.x == other
        if isinstance(other, QuadInt):
            return self.K == other.K and self.x == other.x and self.y == other.y
        return NotImplemented

    def __hash__(self):
        return hash((self.K.d, self.x, self.y))

    def conj(self):
        return QuadInt(self.K, self.x + self.K.trace * self.y, -self.y)

    def norm(self):
        return self.x * self.x + self.K.trace * self.x * self.y + self.K.nrm * self.y * self.y

    def trace(self):
        return 2 * self.x + self.K.trace * self.y

    def is_rational(self):
        return self.y == 0

    def exact_div(self, other):
        """self / other, which must lie in O_K."""
        o = self._co(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in O_K")
        num = self * o.conj()
        if num.x % n or num.y % n:
            raise ValueError(f"{self} is not divisible by {o}")
        return QuadInt(self.K, num.x // n, num.y // n)

    def divides(self, other):
        o = self._co(other)
        num = o * self.conj()
        n = self.norm()
        return num.x % n == 0 and num.y % n == 0

    def __str__(self):
        w = f"sqrt(-{self.K.d})" if self.K.trace == 0 else "w"
        if self.y == 0:
            return str(self.x)
        ys = w if self.y == 1 else f"-{w}" if self.y == -1 else f"{self.y}*{w}"
        if self.x == 0:
            return ys
        return f"{self.x}{'' if ys.startswith('-') else '+'}{ys}"

    def __repr__(self):
        return f"QuadInt({self})"


def associate_key(a):
    return (abs(a.y), 0 if a.x > 0 else 1 if a.x == 0 else 2, 0 if a.y >= 0 else 1)


def canonical_associate(alpha):
    """Associate with minimal |y|, preferring x > 0, then y >= 0."""
    return min((u * alpha for u in alpha.K.units), key=associate_key)


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _hnf(vectors):
    """HNF basis (A, 0), (B, C) of the lattice spanned by integer pairs."""
    A = 0
    B = C = 0
    for x, y in vectors:
        if y == 0:
            A = math.gcd(A, x)
            continue
        if C == 0:
            B, C = x, y
            continue
        g, s, t = _xgcd(C, y)
        A = math.gcd(A, (y // g) * B - (C // g) * x)
        B, C = s * B + t * x, g
    if C < 0:
        B, C = -B, -C
    if A == 0 or C == 0:
        raise ValueError("generators do not span a full-rank lattice")
    return A, B % A, C


@dataclass(frozen=True)
class Ideal:
    """The integral ideal s * (a Z + (b + omega) Z)."""

    K: QuadField
    a: int
    b: int
    s: int = 1

    def __post_init__(self):
        if self.a <= 0 or self.s <= 0 or not 0 <= self.b < self.a:
            raise ValueError(f"invalid ideal normal form ({self.a}, {self.b}, {self.s})")
        if self.K(self.b, 1).norm() % self.a:
            raise ValueError(f"({self.a}, {self.b}+omega) is not an ideal: a does not divide N(b+omega)")

    @classmethod
    def from_generators(cls, K, gens):
        vecs = []
        w = K.omega
        for g in gens:
            g = K.coerce(g)
            gw = g * w
            vecs += [(g.x, g.y), (gw.x, gw.y)]
        A, B, C = _hnf(vecs)
        if A % C or B % C:
            raise ValueError("lattice is not an O_K-ideal")
        a = A // C
        return cls(K, a, (B // C) % a, C)

    @classmethod
    def principal(cls, alpha):
        return cls.from_generators(alpha.K, [alpha])

    @property
    def basis(self):
        return (self.K(self.s * self.a), self.K(self.s * self.b, self.s))

    def norm(self):
        return self.s * self.s * self.a

    def is_unit(self):
        return self.a == 1 and self.s == 1

    def contains(self, alpha):
        alpha = self.K.coerce(alpha)
        if alpha.y % self.s:
            return False
        v = alpha.y // self.s
        return (alpha.x - self.s * v * self.b) % (self.s * self.a) == 0

    def divides(self, other):
        return all(self.contains(g) for g in other.basis)

    def __mul__(self, other):
        if other.K != self.K:
            raise ValueError("ideals belong to different fields")
        return Ideal.from_generators(self.K, [g * h for g in self.basis for h in other.basis])

    def __pow__(self, e):
        result, base = self.K.unit_ideal, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __add__(self, other):
        return Ideal.from_generators(self.K, list(self.basis) + list(other.basis))

    def coprime(self, other):
        return (self + other).is_unit()

    def conj(self):
        return Ideal(self.K, self.a, (-self.b - self.K.trace) % self.a, self.s)

    def reduce(self, alpha):
        """Canonical representative (x0, y0) of alpha modulo this ideal."""
        alpha = self.K.coerce(alpha)
        y0 = alpha.y % self.s
        q = (alpha.y - y0) // self.s
        x0 = (alpha.x - q * self.s * self.b) % (self.s * self.a)
        return x0, y0

    def sort_key(self):
        return (self.a, self.b, self.s)

    def __str__(self):
        inner = "(1)" if self.a == 1 else f"({self.a}, {self.K(self.b, 1)})"
        return inner if self.s == 1 else f"{self.s}*{inner}"


def ideal_norm(I):
    return I.norm()


def ideal_mul(I, J):
    return I * J


# --- splitting of rational primes -----------------------------------------

@dataclass(frozen=True)
class Split:
    prime: Ideal

    @property
    def conjugate(self):
        return self.prime.conj()


@dataclass(frozen=True)
class Inert:
    p: int


@dataclass(frozen=True)
class Ramified:
    prime: Ideal


def splitting_type(K, p):
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    k = kronecker(K.D, p)
    if k == -1:
        return Inert(p)
    b = next(b for b in range(p) if K(b, 1).norm() % p == 0)
    P = Ideal(K, p, b)
    return Split(P) if k == 1 else Ramified(P)


def _prime_power_options(K, q, e, avoid):
    st = splitting_type(K, q)
    if isinstance(st, Inert):
        if e % 2:
            return []
        return [[(Ideal(K, 1, 0, q), e // 2)]] if not avoid(Ideal(K, 1, 0, q)) else []
    if isinstance(st, Ramified):
        return [] if avoid(st.prime) else [[(st.prime, e)]]
    P, Pc = st.prime, st.conjugate
    out = []
    for j in range(e + 1):
        if (j and avoid(P)) or (e - j and avoid(Pc)):
            continue
        out.append([(P, j), (Pc, e - j)])
    return out


def ideal_factorizations(K, n, coprime_to=None):
    """Yield every integral ideal of norm n as a list of (prime ideal, exponent)."""
    if n < 1:
        raise ValueError("n must be positive")
    if coprime_to is None or coprime_to.is_unit():
        def avoid(P):
            return False
    else:
        def avoid(P):
            return P.divides(coprime_to)
    per_prime = []
    for q, e in sorted(factorint(n).items()):
        opts = _prime_power_options(K, q, e, avoid)
        if not opts:
            return
        per_prime.append(opts)
    for combo in itertools.product(*per_prime):
        yield [pe for part in combo for pe in part if pe[1]]


def ideals_of_norm(K, n, coprime_to=None):
    out = []
    for fac in ideal_factorizations(K, n, coprime_to):
        I = K.unit_ideal
        for P, e in fac:
            I = I * P ** e
        out.append(I)
    return sorted(out, key=Ideal.sort_key)


# --- principality via form reduction ----------------------------------------

def ideal_form(I):
    """The binary form N(x*a + y*(b+omega))/a of the primitive part of I."""
    K = I.K
    return I.a, 2 * I.b + K.trace, K(I.b, 1).norm() // I.a


def reduce_form(a, b, c):
    """Reduce a positive definite form; returns (form, M) with f(M v) = reduced(v)."""
    m = [[1, 0], [0, 1]]
    while True:
        if not -a < b <= a:
            r = (a - b) // (2 * a)
            b, c = b + 2 * r * a, a * r * r + b * r + c
            m = [[m[0][0], m[0][0] * r + m[0][1]], [m[1][0], m[1][0] * r + m[1][1]]]
        if a > c or (a == c and b < 0):
            a, b, c = c, -b, a
            m = [[m[0][1], -m[0][0]], [m[1][1], -m[1][0]]]
            continue
        return (a, b, c), m


def is_principal(I):
    """Canonical generator of I if I is principal, else None."""
    (a, _, _), m = reduce_form(*ideal_form(I))
    if a != 1:
        return None
    x, y = m[0][0], m[1][0]
    gen = I.K(I.s * (x * I.a + y * I.b), I.s * y)
    return canonical_associate(gen)


def require_coprime(I, modulus, what="ideal"):
    if not I.coprime(modulus):
        raise NotCoprimeError(f"{what} {I} is not coprime to the modulus {modulus}")


# --- residue embedding at a split prime ---------------------------------------

@dataclass(frozen=True)
class ResidueEmbedding:
    """The ring map O_K -> O_K/P^t = Z/p^t sending omega to s."""

    K: QuadField
    prime: Ideal
    p: int
    t: int
    s: int

    @property
    def modulus(self):
        return self.p ** self.t

    def __call__(self, alpha):
        if isinstance(alpha, int):
            return alpha % self.modulus
        alpha = self.K.coerce(alpha)
        return (alpha.x + alpha.y * self.s) % self.modulus


def residue_embedding(K, P, t):
    st = splitting_type(K, P.a) if P.s == 1 else None
    if not isinstance(st, Split) or P not in (st.prime, st.conjugate):
        raise ValueError(f"{P} is not a prime ideal above a split rational prime")
    p = P.a
    T, N = K.trace, K.nrm
    # omega = -b mod P; Hensel-lift the root of x^2 - T x + N
    s = (-P.b) % p
    mod = p
    for _ in range(t - 1):
        mod *= p
        fx = s * s - T * s + N
        dfx = 2 * s - T
        s = (s - fx * pow(dfx, -1, mod)) % mod
    return ResidueEmbedding(K, P, p, t, s % p ** t)
