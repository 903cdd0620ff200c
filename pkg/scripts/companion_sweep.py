"""Sweep companion constructions over fields with class number > 1.

For each fundamental D in range, each admissible odd M (all primes split,
gcd(h, M) = 1, gcd(D, M) = 1) and each choice of the source twist exponents,
construct the companion and record the chosen d', whether the congruence
holds, and any cross-prime anchor conflicts.
"""

import argparse
import csv
import itertools
import math
import sys
import time
from collections import Counter
from dataclasses import dataclass

from sympy import factorint

from cmcompanion import (
    AnchorConflictError, QuadField, class_group, class_number, construct_companion,
    hecke_char_new, kronecker, trivial_finite_type,
)
from cmcompanion.quadfield import is_fundamental


@dataclass(frozen=True)
class Config:
    d_min: int = -120
    d_max: int = -15
    m_max: int = 120
    k: int = 3
    bound: int = 150
    max_h: int = 6
    out: str | None = None


def admissible(D, h, M):
    if math.gcd(M, D * h) != 1:
        return False
    return all(kronecker(D, p) == 1 for p in factorint(M))


def sweep(cfg):
    rows = []
    for D in range(cfg.d_max, cfg.d_min - 1, -1):
        if not is_fundamental(D) or D in (-3, -4):
            continue
        h = class_number(D)
        if h == 1 or h > cfg.max_h:
            continue
        K = QuadField.from_disc(D)
        moduli = [M for M in range(3, cfg.m_max + 1, 2) if admissible(D, h, M)]
        for M in moduli:
            cg = class_group(K, coprime_to=M)
            for d in itertools.product(*(range(c) for c in cg.orders)):
                psi = hecke_char_new(K, trivial_finite_type(K), cfg.k - 1, cg, d)
                t = time.perf_counter()
                try:
                    res = construct_companion(psi, cfg.k, M, cfg.bound)
                    status = "pass" if res.report.passed else "fail"
                    dprime = list(res.d)
                except AnchorConflictError as e:
                    status, dprime = "conflict", str(e)
                rows.append({"D": D, "h": h, "M": M, "d": list(d), "status": status, "d_prime": dprime,
                             "seconds": round(time.perf_counter() - t, 3)})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d-min", type=int, default=Config.d_min)
    ap.add_argument("--m-max", type=int, default=Config.m_max)
    ap.add_argument("--bound", type=int, default=Config.bound)
    ap.add_argument("--out", help="CSV output path")
    args = ap.parse_args()
    cfg = Config(d_min=args.d_min, m_max=args.m_max, bound=args.bound, out=args.out)
    rows = sweep(cfg)
    counts = Counter(r["status"] for r in rows)
    print(f"{len(rows)} constructions: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))
    for r in rows:
        if r["status"] != "pass":
            print(r)
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    return 0 if counts.get("fail", 0) == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
