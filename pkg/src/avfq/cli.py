"""Command-line front end.

Subcommands:
  analyze    places, slopes, p-rank and the singular prime above p (fast)
  dieudonne  the local-local classification only
  classes    the full isomorphism-class computation
  fixturegen compute and write component fixture files for given inputs
"""

from __future__ import annotations

import argparse
import json
import sys

from .assembly import IsogenyClassComputation
from .intarith import valuation
from .intpoly import IntPoly
from .localinv import p_rank, partition_primes, places_above_p
from .orders import BoundExceeded, make_R, maximal_order
from .picard import NaiveBounds, PicardBoundExceeded, compute_component_data
from .weil import InputError, WeilData, build_algebra, parse_label, weil_from_poly

EXIT_PARSE = 2
EXIT_BOUNDS = 3
EXIT_INVARIANT = 4


def _weil_from_args(args) -> WeilData:
    if args.label:
        return parse_label(args.label)
    if not args.poly or args.q is None:
        raise InputError("provide --label or both --poly and --q")
    coeffs = [int(c) for c in args.poly.replace(" ", "").split(",")]
    if args.coeff_order == "high":
        coeffs = coeffs[::-1]
    return weil_from_poly(IntPoly(coeffs), args.q)


def _add_input_args(sp):
    sp.add_argument("--label", help="isogeny class label g.q.t1_t2_...")
    sp.add_argument("--poly", help="comma-separated integer coefficients")
    sp.add_argument("--q", type=int, help="field size (with --poly)")
    sp.add_argument("--coeff-order", choices=["high", "low"], default="high",
                    help="coefficient order of --poly (default: highest degree first)")


def cmd_analyze(args) -> int:
    w = _weil_from_args(args)
    fa = build_algebra(w)
    OE = maximal_order(fa)
    R = make_R(fa)
    places = places_above_p(fa, OE)
    part = partition_primes(R, places, w.p)
    out = {
        "input": {"label": w.label, "q": w.q, "p": w.p, "a": w.a,
                  "h": list(w.h.coeffs)},
        "p_rank": p_rank(places),
        "index_OE_R": R.lattice.index_in(OE.lattice),
        "places": [{"slope": [pl.slope.numerator, pl.slope.denominator],
                    "e": pl.e, "f": pl.f, "g": pl.g, "val_pi": pl.val_pi}
                   for pl in places],
        "slope_partition": {
            "etale": len(part.etale),
            "local_local": len(part.local_local),
            "multiplicative": len(part.multiplicative),
        },
    }
    if part.local_local:
        P = part.local_local[0][0]
        P2 = P.lattice.mul(P.lattice)
        out["local_local_prime"] = {
            "residue_cardinality": P.residue_cardinality(),
            "index_P_P2": P2.index_in(P.lattice),
            "index_R_P2": P2.index_in(R.lattice),
            "singular": P2.index_in(P.lattice) > P.residue_cardinality(),
        }
    print(json.dumps(out, sort_keys=True, indent=1))
    return 0


def cmd_classes(args) -> int:
    w = _weil_from_args(args)
    comp = IsogenyClassComputation(
        w, picard_backend=args.picard, fixtures_path=args.fixtures,
        scaling=args.scaling, m0_override=args.m0, cap=args.cap)
    if args.output == "summary":
        sys.stdout.write(comp.summary())
    elif args.output == "dot":
        sys.stdout.write(comp.report_dot())
    else:
        print(json.dumps(comp.report_json(), sort_keys=True, indent=1))
    if not comp.nwdh_ok:
        print("internal identity n = w*d*h FAILED", file=sys.stderr)
        return EXIT_INVARIANT
    return 0


def cmd_dieudonne(args) -> int:
    from .dieudonne import (algorithm_delta_classes, algorithm_fv_stability,
                            algorithm_wr_classes, FVContext)
    from .globalmodel import GlobalModel

    w = _weil_from_args(args)
    fa = build_algebra(w)
    OE = maximal_order(fa)
    places = places_above_p(fa, OE)
    gm = GlobalModel(fa, places)
    wr = algorithm_wr_classes(gm, cap=args.cap)
    cands = algorithm_delta_classes(gm, wr)
    fv = algorithm_fv_stability(gm, cands, scaling=args.scaling,
                                m0_override=args.m0)
    stable = [c for c in fv if c.stable]
    out = {
        "wr_classes": len(wr),
        "delta_classes": len(cands),
        "stable_classes": len(stable),
        "m0": fv[0].m0 if fv else 0,
        "a_numbers": sorted((c.a_number or 0) for c in stable),
    }
    print(json.dumps(out, sort_keys=True, indent=1))
    if args.dump_fv and stable:
        ctx = FVContext(gm, cands, scaling=args.scaling, m0_override=args.m0)
        sys.stderr.write(_fv_dump(ctx))
    return 0


def _fv_dump(ctx) -> str:
    lines = ["# fv-dump v1"]
    lines.append(f"m0 {ctx.m0}")
    inv = ctx.J.quotient_invariants(ctx.mod_lo)
    lines.append("Q_m0 invariants " + " ".join(str(d) for d in inv))
    for name, mat in (("F", ctx.F_lo), ("V", ctx.V_lo)):
        lines.append(name)
        for row in mat:
            lines.append(" ".join(str(c) for c in row))
    return "\n".join(lines) + "\n"


def cmd_fixturegen(args) -> int:
    from .fixtures import save_component_fixture

    w = _weil_from_args(args)
    fa = build_algebra(w)
    bounds = NaiveBounds(unit_t2_cap=__import__("fractions").Fraction(10**12),
                         enum_cap=5_000_000, relation_rounds=80)
    for poly in fa.algebra.components:
        cd = compute_component_data(poly, w.q, bounds)
        fname = save_component_fixture(cd, w.q, args.out)
        print(fname)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="avfq",
        description="isomorphism classes of abelian varieties over finite "
                    "fields with commutative endomorphism algebra")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("analyze", help="local invariants only")
    _add_input_args(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("classes", help="full isomorphism-class computation")
    _add_input_args(sp)
    sp.add_argument("--picard", choices=["naive", "fixture"], default="naive")
    sp.add_argument("--fixtures", help="fixture directory")
    sp.add_argument("--scaling", choices=["integer", "uniformizer"],
                    default="integer")
    sp.add_argument("--m0", type=int, help="precision override (>= minimal)")
    sp.add_argument("--output", choices=["json", "dot", "summary"],
                    default="json")
    sp.add_argument("--cap", type=int, default=100000,
                    help="enumeration size cap")
    sp.add_argument("--parallel", type=int, default=1,
                    help="worker bound for the independent per-class sections")
    sp.set_defaults(func=cmd_classes)

    sp = sub.add_parser("dieudonne", help="local-local classification only")
    _add_input_args(sp)
    sp.add_argument("--scaling", choices=["integer", "uniformizer"],
                    default="integer")
    sp.add_argument("--m0", type=int)
    sp.add_argument("--cap", type=int, default=100000)
    sp.add_argument("--dump-fv", action="store_true",
                    help="dump the finite-quotient operators to stderr")
    sp.set_defaults(func=cmd_dieudonne)

    sp = sub.add_parser("fixturegen",
                        help="write component fixture files (slow, exact)")
    _add_input_args(sp)
    sp.add_argument("--out", help="output directory")
    sp.set_defaults(func=cmd_fixturegen)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (BoundExceeded, PicardBoundExceeded) as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except AssertionError as exc:
        print(f"internal invariant failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
