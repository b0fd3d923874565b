"""Command line interface.

Exit codes: 0 when a result was produced (whatever the verdict), 1 for input
errors, 2 when an internal invariant is violated.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .boundsets import (DEFAULT_BUDGET, ECM_CURVES, PRIMED, RHO_ITERATIONS, UNPRIMED, build_class_data,
                        build_exceptional_sets)
from .certify import CertifyOptions, certify, dumps, jsonable, sets_to_json
from .numfield.field import FieldSpecError
from .numfield.ideals import IdealError
from .numfield.io import load_field
from .numfield.splitting import FactorizationClaimError, IndexDivisorError, splitting_data
from .quadforms import DiscriminantError, class_number_imag, reduced_forms
from .quaternion import INF, InvariantViolation, congruence_classes_nonsplit, hilbert_symbol
from .replay import format_table, replay_paper_examples
from .shimura import UnsupportedGenus, conic_model, local_points_Qp

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


def _support(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad support list {text!r}") from None


def _emit(obj, out: str | None = None) -> None:
    text = dumps(jsonable(obj))
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_certify(args) -> int:
    opts = CertifyOptions(gamma0=args.gamma0, budget=args.budget, seed=args.seed, workers=args.workers,
                          enumerate_sets=not args.no_sets, support=_support(args.support),
                          q_ceiling=args.q_ceiling, rho_iterations=args.rho_iterations,
                          ecm_curves=args.ecm_curves)
    _emit(certify(args.d, args.K, opts), args.o)
    return EXIT_OK


def cmd_splitting(args) -> int:
    K = load_field(args.K)
    sd = splitting_data(K, args.p, seed=args.seed)
    out = {"p": sd.p, "factors": [{"e": e, "f": f} for e, f in sd.factors], "g": sd.g}
    try:
        e, f, g = sd.efg()
        out["efg"] = [e, f, g]
    except ValueError:
        pass
    _emit(out)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    v = INF if args.v.lower() in ("inf", "oo", "infinity") else int(args.v)
    a, b = Fraction(args.a), Fraction(args.b)
    _emit({"a": str(a), "b": str(b), "v": v, "symbol": hilbert_symbol(a, b, v)})
    return EXIT_OK


def cmd_shimura_local(args) -> int:
    model = conic_model(args.d)
    if isinstance(model, UnsupportedGenus):
        _emit({"d": args.d, "p": args.p, "outcome": model.kind, "reason": model.reason})
        return EXIT_OK
    _emit({"d": args.d, "p": args.p, "model": f"x^2 + y^2 + {model.m} = 0",
           "local_points": local_points_Qp(model, args.p)})
    return EXIT_OK


def cmd_classnum(args) -> int:
    h = class_number_imag(args.D)
    _emit({"D": args.D, "class_number": h, "reduced_forms": [[f.a, f.b, f.c] for f in reduced_forms(args.D)]})
    return EXIT_OK


def cmd_congruences(args) -> int:
    M, res = congruence_classes_nonsplit(args.d)
    _emit({"d": args.d, "modulus": M, "residues": res})
    return EXIT_OK


def cmd_replay(args) -> int:
    checks = replay_paper_examples()
    print(format_table(checks))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_INTERNAL


def cmd_sets(args) -> int:
    K = load_field(args.K)
    cd = build_class_data(K)
    variant = UNPRIMED if args.unprimed else PRIMED
    res = build_exceptional_sets(K, cd, variant, args.budget, _support(args.support), args.workers, args.seed,
                                 rho_iterations=args.rho_iterations, ecm_curves=args.ecm_curves)
    _emit(sets_to_json(res), args.o)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _effort_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rho-iterations", type=int, default=RHO_ITERATIONS, help="Pollard rho steps per cofactor")
    p.add_argument("--ecm-curves", type=int, default=ECM_CURVES, help="ECM curves per cofactor (0 disables)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="qmcert", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("certify", help="certificate for a discriminant d and a field K")
    c.add_argument("-d", type=int, required=True)
    c.add_argument("-K", required=True, help="field file (JSON/TOML) or bundled field name")
    c.add_argument("--gamma0", action="store_true", help="also build the unprimed sets")
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--no-sets", action="store_true", help="skip exceptional-set enumeration")
    c.add_argument("--support", help="comma-separated automorphism indices allowed nonzero exponents")
    c.add_argument("--q-ceiling", type=int, default=10**6)
    c.add_argument("-o", help="write the certificate here instead of stdout")
    _effort_options(c)
    c.set_defaults(func=cmd_certify)

    s = sub.add_parser("splitting", help="(e, f, g) data of p in K")
    s.add_argument("-K", required=True)
    s.add_argument("-p", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_splitting)

    h = sub.add_parser("hilbert", help="Hilbert symbol (a, b)_v")
    h.add_argument("-a", required=True)
    h.add_argument("-b", required=True)
    h.add_argument("-v", required=True, help="a prime or 'inf'")
    h.set_defaults(func=cmd_hilbert)

    m = sub.add_parser("shimura-local", help="points of the genus-0 Shimura curve over Q_p")
    m.add_argument("-d", type=int, required=True)
    m.add_argument("-p", type=int, required=True)
    m.set_defaults(func=cmd_shimura_local)

    k = sub.add_parser("classnum", help="class number of an imaginary quadratic discriminant")
    k.add_argument("-D", type=int, required=True)
    k.set_defaults(func=cmd_classnum)

    g = sub.add_parser("congruences", help="classes of q with B tensor Q(sqrt(-q)) nonsplit")
    g.add_argument("-d", type=int, required=True)
    g.set_defaults(func=cmd_congruences)

    r = sub.add_parser("replay-paper", help="re-check the worked examples")
    r.set_defaults(func=cmd_replay)

    e = sub.add_parser("sets", help="exceptional sets only")
    e.add_argument("-K", required=True)
    e.add_argument("--unprimed", action="store_true")
    e.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    e.add_argument("--support")
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("-o")
    _effort_options(e)
    e.set_defaults(func=cmd_sets)
    return ap


INPUT_ERRORS = (FieldSpecError, IdealError, IndexDivisorError, FactorizationClaimError, DiscriminantError,
                FileNotFoundError, json.JSONDecodeError, ValueError, argparse.ArgumentTypeError)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InvariantViolation as e:
        print(f"internal invariant violated: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except INPUT_ERRORS as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:  # anything else is a bug
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
