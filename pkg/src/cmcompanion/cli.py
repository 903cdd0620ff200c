"""Command line interface: ``cmcompanion <command> ...``.

Exit codes: 0 success or verified pass, 1 verified false, 2 error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .classgroup import class_group, reduced_forms
from .companion import companion_weight_modM, companion_weight_p_power, construct_companion, is_ordinary_at
from .congruence import detect_cm, twisted_congruence
from .errors import AnchorConflictError, ExactBackendError, HypothesisError
from .formfile import FormFileError, read_form, write_form
from .heckechar import finite_type_from_values, hecke_char_new, trivial_finite_type
from .qexpansion import synthesize
from .quadfield import Ideal, QuadField, is_fundamental
from .residue import residue_system

DEFAULT_BOUND = 200


class UsageError(Exception):
    pass


def _ints(text, n=None):
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None
    if n is not None and len(vals) not in n:
        raise UsageError(f"expected {' or '.join(map(str, n))} integers, got {text!r}")
    return vals


def _field(D):
    if D >= 0 or not is_fundamental(D):
        raise UsageError(f"{D} is not a negative fundamental discriminant")
    return QuadField.from_disc(D)


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _ideal_str(I):
    return f"[{I.a}, {I.b}, {I.s}]"


# --- commands -------------------------------------------------------------------

def cmd_classgroup(args):
    K = _field(args.disc)
    forms = reduced_forms(K.D)
    cg = class_group(K)
    data = {"disc": K.D, "h": len(forms), "forms": [list(f) for f in forms],
            "reps": [[I.a, I.b, I.s] for I in cg.reps], "orders": list(cg.orders),
            "gens": [[g.x, g.y] for g in cg.gens]}
    lines = [f"{K}: h = {len(forms)}", "reduced forms: " + " ".join(str(tuple(f)) for f in forms)]
    for I, c, g in zip(cg.reps, cg.orders, cg.gens):
        lines.append(f"generator {_ideal_str(I)} (norm {I.norm()}) of order {c}, power generated by {g}")
    _emit(args, data, "\n".join(lines))
    return 0


def _character(args):
    K = _field(args.disc)
    if args.ft_modulus:
        a, b, *s = _ints(args.ft_modulus, (2, 3))
        modulus = Ideal(K, a, b, s[0] if s else 1)
        assignments = []
        for spec in args.ft_gen or []:
            gen, _, k = spec.partition(":")
            x, y = _ints(gen, (2,))
            assignments.append((K(x, y), int(k or 0)))
        ft = finite_type_from_values(K, modulus, assignments, args.ft_order)
    else:
        ft = trivial_finite_type(K)
    cg = class_group(K, ft.modulus, coprime_to=args.residue_modulus or 1)
    d = _ints(args.d) if args.d else [0] * len(cg.reps)
    return hecke_char_new(K, ft, args.u, cg, d)


def cmd_synth(args):
    psi = _character(args)
    ring = None
    if args.residue_modulus:
        ring = residue_system(psi.K, args.residue_modulus, root_order=psi.finite_type.order,
                              class_exponent=math.lcm(1, *psi.class_group.orders))
    elif not psi.is_exact():
        raise UsageError("character values are not in Z[omega]; pass --residue-modulus")
    F = synthesize(psi, args.bound, ring)
    if args.out:
        write_form(args.out, F)
    neb = F.nebentypus
    data = {"weight": F.weight, "level": F.level, "nebentypus_conductor": neb.conductor(),
            "bound": F.bound, "exact": F.is_exact(), "out": args.out}
    _emit(args, data, f"weight {F.weight}, level {F.level}, nebentypus conductor {neb.conductor()}\n{F}")
    return 0


def cmd_companion(args):
    ff = read_form(args.form)
    psi = ff.character()
    conj = tuple(_ints(args.conjugate)) if args.conjugate else None
    result = construct_companion(psi, ff.weight, args.modulus, args.bound, conjugate=conj)
    if args.out:
        write_form(args.out, result.h, result.psi_prime)
    report = result.to_json()
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(json.dumps(report, indent=1, sort_keys=True) + "\n")
    r = result.report
    text = (f"companion of weight {result.weight} modulo {args.modulus}, d = {list(result.d)}\n"
            f"congruence {'pass' if r.passed else 'FAIL'}: checked {r.checked}, skipped {r.skipped}")
    if r.first_failure:
        text += f", first failure at n = {r.first_failure[0]}"
    _emit(args, report, text)
    return 0 if r.passed else 1


def cmd_verify(args):
    f_file, h_file = read_form(args.f), read_form(args.h)
    f, h = f_file.expansion(), h_file.expansion()
    bound = args.bound or min(f.bound, h.bound)
    report = twisted_congruence(f, h, args.k, args.modulus, level=args.level, bound=bound)
    text = f"{'pass' if report.passed else 'FAIL'}: checked {report.checked}, skipped {report.skipped}"
    if report.first_failure:
        n, lhs, rhs = report.first_failure
        text += f"\nfirst failure at n = {n}: {lhs} != {rhs}"
    _emit(args, report.to_json(), text)
    return 0 if report.passed else 1


def cmd_detect_cm(args):
    F = read_form(args.form).expansion()
    rep = detect_cm(F, args.disc, args.bound)
    data = {"cm": rep.is_cm, "disc": args.disc, "witness": rep.witness}
    text = "true" if rep.is_cm else f"false (witness q = {rep.witness})"
    _emit(args, data, text)
    return 0 if rep.is_cm else 1


def cmd_weight(args):
    if args.modulus is not None:
        w = companion_weight_modM(args.k, args.modulus)
    elif args.p is not None and args.m is not None:
        w = companion_weight_p_power(args.k, args.p, args.m)
    else:
        raise UsageError("give --modulus, or --p and --m")
    _emit(args, {"k": args.k, "k_prime": w}, str(w))
    return 0


def cmd_ordinary(args):
    F = read_form(args.form).expansion()
    ok = is_ordinary_at(F, args.p)
    _emit(args, {"p": args.p, "ordinary": ok}, "true" if ok else "false")
    return 0 if ok else 1


# --- parser ------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="cmcompanion", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classgroup", parents=[common], help="class group of Q(sqrt(D))")
    p.add_argument("--disc", type=int, required=True)
    p.set_defaults(func=cmd_classgroup)

    p = sub.add_parser("synth", parents=[common], help="q-expansion of a Hecke character")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--u", type=int, required=True, help="infinity exponent (weight u + 1)")
    p.add_argument("--ft-modulus", help="modulus ideal as a,b[,s] meaning s*(aZ + (b+omega)Z)")
    p.add_argument("--ft-order", type=int, default=2, help="order of the finite type values")
    p.add_argument("--ft-gen", action="append", metavar="X,Y:K",
                   help="finite type sends X + Y*omega to zeta**K (repeatable)")
    p.add_argument("--d", help="comma-separated twist exponents for the class group generators")
    p.add_argument("--residue-modulus", type=int, help="compute coefficients in a residue system mod M")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--out")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("companion", parents=[common], help="construct a companion form mod M")
    p.add_argument("--form", required=True)
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--conjugate", help="primes p | M at which to use the conjugate prime (default: search)")
    p.add_argument("--out", help="write the companion form file here")
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_companion)

    p = sub.add_parser("verify", parents=[common], help="check a_n(f) = n^(k-1) a_n(h) mod M")
    p.add_argument("--f", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--level", type=int)
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("detect-cm", parents=[common], help="vanishing at inert primes")
    p.add_argument("--form", required=True)
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--bound", type=int)
    p.set_defaults(func=cmd_detect_cm)

    p = sub.add_parser("weight", parents=[common], help="companion weight")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--modulus", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("ordinary", parents=[common], help="is a_p a unit above p")
    p.add_argument("--form", required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_ordinary)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HypothesisError as e:
        print(f"hypothesis failed: {e}", file=sys.stderr)
    except AnchorConflictError as e:
        print(f"anchor conflict: {e}", file=sys.stderr)
    except (UsageError, FormFileError, ExactBackendError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
