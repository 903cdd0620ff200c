"""Rebuild the level 8 weight 3 CM form and its companions modulo 33, 51 and 99."""

import argparse
import time
from dataclasses import dataclass

from cmcompanion import (
    QuadField, class_group, construct_companion, hecke_char_new, is_ordinary_at, synthesize,
    trivial_finite_type, twisted_congruence,
)


@dataclass(frozen=True)
class Config:
    disc: int = -8
    k: int = 3
    moduli: tuple = (33, 51, 99)
    bound: int = 2000
    show: int = 25


def run(cfg):
    K = QuadField.from_disc(cfg.disc)
    psi = hecke_char_new(K, trivial_finite_type(K), cfg.k - 1, class_group(K))
    f = synthesize(psi, cfg.bound)
    print(f"f: weight {f.weight}, level {f.level}, nebentypus conductor {f.nebentypus.conductor()}")
    print("  " + " ".join(str(a) for a in f.coeffs[:cfg.show]))
    print("  ordinary at:", [p for p in (3, 5, 7, 11, 13, 17, 19, 23) if is_ordinary_at(f, p)])
    for M in cfg.moduli:
        t = time.perf_counter()
        res = construct_companion(psi, cfg.k, M, cfg.bound)
        rep = twisted_congruence(f, res.h, cfg.k, M, level=f.level, bound=cfg.bound)
        dt = time.perf_counter() - t
        print(f"M = {M}: weight {res.weight}, pass={rep.passed}, checked {rep.checked}, "
              f"skipped {rep.skipped} ({dt:.2f}s)")
        print(f"  a_2 = {res.h[2]}, a_3 = {res.h[3]}, a_25 = {res.h[25]}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=Config.bound)
    args = ap.parse_args()
    run(Config(bound=args.bound))


if __name__ == "__main__":
    main()
