"""Command-line driver.

Exit codes: 0 success, 1 a check or condition failed, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import jsonio
from .certcheck import build_bundle, bundle_failures, factorization_failures, support_rep_of
from .exactpoly import UniPoly, differentiate, parse_rational
from .obstruct import condition_star
from .repforge import psd_factorization
from .tensorcalc import DecompositionError, flat_order_of, s_polynomial


class InputError(ValueError):
    pass


def _read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def orient(f: UniPoly) -> tuple[UniPoly, str]:
    """Reflect hypographs (concave at 0) to epigraphs; refuse non-convex shapes."""
    f2 = differentiate(f, 2)(0)
    if f2 > 0:
        return f, "epigraph"
    if f2 < 0:
        return -f, "hypograph"
    m, cm = flat_order_of(f)
    if m % 2:
        raise InputError(f"neither convex nor concave at the base point (odd flat order {m})")
    return (f, "epigraph") if cm > 0 else (-f, "hypograph")


def cmd_repr(args) -> int:
    f, orientation = orient(jsonio.uni_from(_read_json(args.poly)))
    decomp = jsonio.decomp_from(_read_json(args.decomp)) if args.decomp else None
    if decomp is not None and orientation == "hypograph":
        raise InputError("a supplied decomposition must refer to an epigraph")
    s, bundle = build_bundle(f, args.cap, args.precision, decomp, n_tangents=args.tangents, orientation=orientation)
    _write(args.out, jsonio.dumps(jsonio.bundle_to(bundle, s.rep)))
    if args.out not in (None, "-"):
        summary = {
            "a": jsonio.rat_to(s.a),
            "flat_order": s.decomp.flat_order,
            "orientation": orientation,
            "terms": len(s.decomp.terms),
            "generator_certs": len(bundle.generator_certs),
            "out": args.out,
        }
        sys.stdout.write(jsonio.dumps(summary))
    return 0


def cmd_factorize(args) -> int:
    f = jsonio.uni_from(_read_json(args.poly))
    decomp = jsonio.decomp_from(_read_json(args.decomp))
    try:
        fac = psd_factorization(f, decomp, args.radius, certify=False)
    except NotImplementedError as exc:
        raise InputError(str(exc)) from exc
    _write(args.out, jsonio.dumps(jsonio.factorization_to(fac)))
    failures = factorization_failures(f, fac)
    result = {"ok": not failures, "failures": failures}
    (sys.stdout if args.out not in (None, "-") else sys.stderr).write(jsonio.dumps(result))
    return 0 if not failures else 1


def verify_bundle_json(obj) -> list[str]:
    bundle = jsonio.bundle_from(obj)
    failures = bundle_failures(bundle)
    if "support_rep" in obj and not failures:
        if jsonio.rep_from(obj["support_rep"]) != support_rep_of(bundle).rep:
            failures.append("stored support_rep differs from the one rebuilt from f, a and the decomposition")
    return failures


def cmd_verify(args) -> int:
    failures = verify_bundle_json(_read_json(args.bundle))
    sys.stdout.write(jsonio.dumps({"ok": not failures, "failures": failures}))
    return 0 if not failures else 1


def cmd_spoly(args) -> int:
    sys.stdout.write(jsonio.dumps(jsonio.spoly_to(s_polynomial(args.m, args.n))))
    return 0


def cmd_obstruct(args) -> int:
    S = jsonio.pointset_from(_read_json(args.points))
    report = condition_star(S, args.d, jobs=args.jobs)
    sys.stdout.write(jsonio.dumps(jsonio.report_to(report)))
    return 0 if report.holds else 1


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="socrep", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("repr", help="build a support-cone representation and certificate bundle")
    p.add_argument("--poly", required=True, help="UniPoly JSON file")
    p.add_argument("--cap", required=True, type=_rational, help="largest radius to try (p/q)")
    p.add_argument("--precision", required=True, type=_rational, help="bisection precision (p/q)")
    p.add_argument("--out", help="bundle output file (default stdout)")
    p.add_argument("--decomp", help="use this TensorDecomposition JSON instead of the built-in one")
    p.add_argument("--tangents", type=int, default=21, help="number of sampled tangent certificates")
    p.set_defaults(func=cmd_repr)

    p = sub.add_parser("factorize", help="emit a rank-one PSD factorization")
    p.add_argument("--poly", required=True)
    p.add_argument("--radius", required=True, type=_rational)
    p.add_argument("--decomp", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("verify", help="check a certificate bundle")
    p.add_argument("--bundle", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spoly", help="print the S-polynomial S(m, n)")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_spoly)

    p = sub.add_parser("obstruct", help="decide condition (*) on a finite point set")
    p.add_argument("--points", required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_obstruct)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, DecompositionError, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"socrep {args.verb}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
