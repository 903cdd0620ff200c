"""The exact coefficient ring Z[omega] and exact root extraction in it."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .errors import ExactBackendError
from .quadfield import QuadField, QuadInt, associate_key


@dataclass(frozen=True)
class ExactRing:
    K: QuadField

    def lift(self, v):
        return self.K.coerce(v)

    @property
    def one(self):
        return self.K(1)

    @property
    def zero(self):
        return self.K(0)

    def root_of_unity(self, order, k=1):
        w = self.K.num_units
        if (k * w) % order:
            raise ExactBackendError(
                f"exp(2 pi i {k}/{order}) does not lie in Z[omega] for D={self.K.D}")
        return self.K.unit_generator ** ((k * w // order) % w)

    def div(self, a, b):
        return a.exact_div(b)

    def anchor_value(self, anchor):
        root = anchor.exact_root
        if root is None:
            raise ExactBackendError(
                f"anchor on {anchor.rep} needs a {anchor.order}-th root outside Z[omega]; "
                "use a residue system")
        return root * self.root_of_unity(anchor.order, anchor.d)


def _to_complex(alpha):
    K = alpha.K
    s = mpmath.sqrt(K.d)
    if K.trace:
        return mpmath.mpc(alpha.x + mpmath.mpf(alpha.y) / 2, alpha.y * s / 2)
    return mpmath.mpc(alpha.x, alpha.y * s)


def _from_complex(K, z):
    s = mpmath.sqrt(K.d)
    if K.trace:
        y = int(mpmath.nint(2 * z.imag / s))
        x = int(mpmath.nint(z.real - mpmath.mpf(y) / 2))
    else:
        y = int(mpmath.nint(z.imag / s))
        x = int(mpmath.nint(z.real))
    return QuadInt(K, x, y)


def exact_roots(r, c):
    """All beta in O_K with beta**c == r."""
    if c == 1:
        return [r]
    if r == 0:
        return [r.K(0)]
    digits = len(str(max(abs(r.x), abs(r.y)))) + 30
    with mpmath.workdps(digits):
        z = _to_complex(r)
        base = mpmath.root(z, c)
        found = []
        for j in range(c):
            cand = _from_complex(r.K, base * mpmath.expjpi(mpmath.mpf(2 * j) / c))
            if cand ** c == r and cand not in found:
                found.append(cand)
    return found


def exact_root(r, c):
    """Canonical c-th root of r in O_K, or None when there is none."""
    roots = exact_roots(r, c)
    return min(roots, key=associate_key) if roots else None
