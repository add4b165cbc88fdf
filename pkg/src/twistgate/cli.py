"""Command line entry point: ``twistgate classify|density|unconditional|local``."""

from __future__ import annotations

import argparse
import json
import sys

from sympy import isprime

from .analysis import classify_twists, density_profile, unconditional_family
from .curve_model import InvalidCurveError, TriState, build_curve, make_twist, rational_fixed_points
from .local_solver import REAL, solvable_padic, solvable_real
from .poly_core import IntPoly, discriminant
from .report import emit_report, twist_to_dict

EXIT_OK = 0
EXIT_INVALID_CURVE = 2
EXIT_INDETERMINATE = 3


def _poly(text: str) -> IntPoly:
    try:
        f = IntPoly.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad coefficient list {text!r}: {e}") from e
    if f.is_zero():
        raise argparse.ArgumentTypeError("the zero polynomial is not a valid curve")
    return f


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twistgate", description="Twists d*y^n = f(x) of superelliptic curves.")
    sub = p.add_subparsers(dest="command", required=True)
    poly_help = "coefficients of f, highest degree first, comma separated (e.g. 1,0,7,0)"

    c = sub.add_parser("classify", help="classify all twists with |d| <= X")
    c.add_argument("--poly", type=_poly, required=True, help=poly_help)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--X", type=int, required=True, help="twist bound |d| <= X")
    c.add_argument("--height", type=int, default=100, help="point search height bound")
    c.add_argument("--out", help="report path (stdout summary only if omitted)")
    c.add_argument("--format", choices=["json", "csv"], default="json")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--prime-bound", type=int, default=10_000, help="prime bound for density estimates")
    c.add_argument("--strict", action="store_true", help="exit 3 when condition (i) is indeterminate")

    d = sub.add_parser("density", help="root density of f mod primes")
    d.add_argument("--poly", type=_poly, required=True, help=poly_help)
    d.add_argument("--prime-bound", type=int, default=100_000)

    u = sub.add_parser("unconditional", help="twists by squares of split primes of y^(2N) = f(x)")
    u.add_argument("--poly", type=_poly, required=True, help=poly_help)
    u.add_argument("--n", type=int, required=True)
    u.add_argument("--X", type=int, required=True)
    u.add_argument("--height", type=int, default=10)
    u.add_argument("--assert-finite-rank", action="store_true")

    loc = sub.add_parser("local", help="local solvability of one twist at one place")
    loc.add_argument("--poly", type=_poly, required=True, help=poly_help)
    loc.add_argument("--n", type=int, required=True)
    loc.add_argument("--d", type=int, required=True)
    loc.add_argument("--ell", required=True, help="a prime, or R for the real place")
    return p


def _verdict_dict(v) -> dict:
    out = {"place": str(v.place), "status": v.status.value, "method": v.method.value, "nodes": v.nodes}
    w = v.witness
    if w is not None:
        out["witness"] = {"chart": w.chart, "x": str(w.x), "y": None if w.y is None else str(w.y),
                          "precision": w.precision}
    return out


def _summary(report) -> dict:
    return {
        "curve": report.curve,
        "counts": report.counts,
        "densities": {k: report.densities[k] for k in ("delta_root", "delta_split", "gamma_paper", "gamma_fit")},
        "granville": report.granville,
        "congruence": report.congruence,
        "weakly_intersective": report.weakly_intersective,
        "interpretation": report.interpretation,
        "candidate_violations": [t.d for t in report.candidate_violations][:20],
    }


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "density":
            if args.poly.degree < 1:
                raise InvalidCurveError("f must have degree at least 1")
            if discriminant(args.poly) == 0:
                raise InvalidCurveError("f must be squarefree")
            prof = density_profile(args.poly, args.prime_bound)
            print(json.dumps({
                "delta_root": prof.delta_root,
                "primes_scanned": prof.primes_scanned,
                "exceptions": list(prof.exceptions),
                "weakly_intersective": prof.weakly_intersective,
                "label": prof.label,
            }, indent=2))
            return EXIT_OK
        curve = build_curve(args.n, args.poly)
    except InvalidCurveError as e:
        print(f"invalid curve: {e}", file=sys.stderr)
        return EXIT_INVALID_CURVE

    if args.command == "classify":
        fixed = rational_fixed_points(curve)
        if args.strict and fixed.condition_i_holds is TriState.UNKNOWN:
            print("condition (i) is indeterminate for this curve (1 < gcd(n, deg f) < n)", file=sys.stderr)
            return EXIT_INDETERMINATE
        report = classify_twists(curve, args.X, args.height, jobs=args.jobs, prime_bound=args.prime_bound)
        if args.out:
            for path in emit_report(report, args.format, args.out):
                print(f"wrote {path}", file=sys.stderr)
        print(json.dumps(_summary(report), indent=2))
        return EXIT_OK

    if args.command == "unconditional":
        fam = unconditional_family(curve, args.X, args.assert_finite_rank, args.height)
        print(json.dumps({
            "n": fam.n,
            "f": list(fam.f),
            "N": fam.N,
            "quotient_genus": fam.quotient_genus,
            "guarantee": fam.guarantee.value,
            "reason": fam.reason,
            "split_primes": list(fam.split_primes),
            "verified": fam.verified,
            "twists": [twist_to_dict(t) for t in fam.twists],
        }, indent=2))
        return EXIT_OK

    # local
    d = make_twist(curve, args.d).d
    if args.ell.upper() in (REAL, "REAL", "INF"):
        v = solvable_real(curve, d)
    else:
        try:
            ell = int(args.ell)
        except ValueError:
            ell = 0
        if not isprime(ell):
            print(f"--ell must be a prime or R, got {args.ell!r}", file=sys.stderr)
            return EXIT_INVALID_CURVE
        v = solvable_padic(curve, d, ell)
    print(json.dumps({"d": d, **_verdict_dict(v)}, indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
