"""Brute-force reference computations, deliberately independent of the package."""

import math


def legendre(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def kronecker_oracle(D, n):
    """(D|n) from the multiplicative definition, factoring n by trial division."""
    if n == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    p = 2
    while n > 1:
        while n % p == 0:
            n //= p
            if p == 2:
                if D % 2 == 0:
                    return 0
                result *= 1 if D % 8 in (1, 7) else -1
            else:
                result *= legendre(D, p)
        p += 1
    return result


def fundamental_discriminants(lo, hi):
    out = []
    for D in range(lo, hi + 1):
        if D >= 0:
            continue
        if D % 4 == 1:
            m = -D
            if all(m % (q * q) for q in range(2, math.isqrt(m) + 1)):
                out.append(D)
        elif D % 4 == 0:
            m = -D // 4
            if m % 4 in (1, 2) and all(m % (q * q) for q in range(2, math.isqrt(m) + 1)):
                out.append(D)
    return out


def class_number_oracle(D):
    """Count primitive reduced forms (a, b, c): |b| <= a <= c, b >= 0 if |b| = a or a = c."""
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                h += 1
        a += 1
    return h


# --- Q(sqrt(-5)) with psi(I)**2 = psi(I**2), computed from scratch ---------------------

def _ideals_sqrt_m5(n):
    """HNF triples (a, b, s) of ideals s*(aZ + (b + sqrt(-5))Z) of norm n."""
    out = []
    for s in range(1, math.isqrt(n) + 1):
        if n % (s * s):
            continue
        a = n // (s * s)
        for b in range(a):
            if (b * b + 5) % a == 0:
                out.append((a, b, s))
    return out


def _contains(ideal, x, y):
    a, b, s = ideal
    if x % s or y % s:
        return False
    x, y = x // s, y // s
    return (x - b * y) % a == 0


def _element_of_norm(ideal, m):
    # x^2 + 5y^2 = m with x + y sqrt(-5) in the ideal
    for y in range(math.isqrt(m // 5) + 1):
        r = m - 5 * y * y
        x = math.isqrt(r)
        if x * x == r:
            for sx in (x, -x):
                for sy in (y, -y):
                    if _contains(ideal, sx, sy):
                        return sx, sy
    return None


def _mul(u, v):
    return (u[0] * v[0] - 5 * u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _power(u, e):
    r = (1, 0)
    for _ in range(e):
        r = _mul(r, u)
    return r


def psi_sqrt_m5(ideal, u, sign):
    """psi(I) for the character of Q(sqrt(-5)) with psi((g)) = g**u, psi(P2) = sign * 2**(u/2).

    Returns an exact element x + y sqrt(-5).  Needs u even.
    """
    a, b, s = ideal
    n = a * s * s
    g = _element_of_norm(ideal, n)
    if g is not None:
        return _power(g, u)
    # I * P2 = (g) with N(g) = 2n, P2 the ramified prime above 2
    g = _element_of_norm(ideal, 2 * n)
    assert g is not None, ideal
    x, y = _power(g, u)
    d = sign * 2 ** (u // 2)
    assert x % d == 0 and y % d == 0
    return x // d, y // d


def coefficients_sqrt_m5(u, sign, bound):
    out = []
    for n in range(1, bound + 1):
        tx = ty = 0
        for I in _ideals_sqrt_m5(n):
            x, y = psi_sqrt_m5(I, u, sign)
            tx, ty = tx + x, ty + y
        assert ty == 0
        out.append(tx)
    return out


def twisted_ok(f, h, k, M, level, bound):
    return all((f[n - 1] - pow(n, k - 1, M) * h[n - 1]) % M == 0
               for n in range(1, bound + 1) if math.gcd(n, level * M) == 1)
