"""Command-line front end: batch bound reports, undercount verification, and
series coefficient dumps.

Exit codes: 0 success; 1 computation failure; 2 invalid arguments (including
size-limit rejections of verify); 3 verification ran and dominance failed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bounds import compute_report, verify_undercount
from .errors import SizeLimit, SpecradError
from .graphs import DEFAULT_VERTEX_CAP
from .series import BiSeries, Series
from .solvers import DEFAULT_PRECISION, solve_zeta_surface
from .transforms import (
    ProblemSpec,
    cactus_pipeline,
    cogrowth_transform,
    cycle_green,
    free_product_green,
    tree_green,
)


def _add_shape_args(p, need_k=False):
    p.add_argument("-d", type=int, help="vertex degree")
    p.add_argument("-m", type=int, help="face size (m-gon tessellation)")
    p.add_argument("--genus", type=int, help="surface genus g (implies d = m = 4g)")
    if need_k:
        p.add_argument("-k", type=int, help="cycle length for the Paschke bound")


def _spec_from_args(args, allow_tree=False):
    given_dm = args.d is not None and args.m is not None
    if args.genus is not None:
        if args.d is not None or args.m is not None:
            raise _ArgumentError("give either --genus or -d/-m, not both")
        return ProblemSpec.genus(args.genus), args.genus
    if given_dm:
        return ProblemSpec.tessellation(args.d, args.m), None
    if allow_tree and args.d is not None:
        return ProblemSpec.free(args.d), None
    raise _ArgumentError("a tessellation needs --genus or both -d and -m"
                         + (" (or -d alone for the tree)" if allow_tree else ""))


class _ArgumentError(Exception):
    pass


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_bound(args) -> int:
    spec, genus = _spec_from_args(args, allow_tree=True)
    report = compute_report(spec, genus=genus, k=args.k,
                            trunc_order=args.N, precision=args.precision)
    if args.format == "json":
        _emit(report.to_json() + "\n", args.out)
    else:
        _emit(report.table(), args.out)
    return 0


def cmd_verify(args) -> int:
    spec, _ = _spec_from_args(args, allow_tree=True)
    result = verify_undercount(spec, args.n_max, precision=args.precision,
                               cap=args.cap)
    if args.format == "json":
        _emit(result.to_json() + "\n", args.out)
    else:
        _emit(result.table(), args.out)
    return 0 if result.dominance_holds else 3


def _series_rows(name, args):
    n = args.N
    if name == "h":
        if args.d is None:
            raise _ArgumentError("series h needs -d")
        return tree_green(args.d, n), None
    if name == "cycle":
        if args.k is None:
            raise _ArgumentError("series cycle needs -k")
        return cycle_green(args.k, n), None
    if name == "free-product":
        if args.k is None or args.d is None:
            raise _ArgumentError("series free-product needs -k and -d (the P_{k,d} ball)")
        if args.d == 3:
            inner = Series([1], n)  # single vertex: (d-2)-regular tree is a point
        else:
            inner = tree_green(args.d - 2, n)
        return free_product_green(inner, cycle_green(args.k, n), n), None
    if name == "theta":
        if args.d is None:
            raise _ArgumentError("series theta needs -d")
        return cogrowth_transform(tree_green(args.d, n), args.d), None
    # pipeline series g1, g2, g3
    spec, _ = _spec_from_args(args, allow_tree=True)
    if spec.is_free:
        zeta = None
        pipe = cactus_pipeline(spec, 1, n)
    else:
        zres = solve_zeta_surface(spec.d, spec.monomial_length, args.precision)
        zeta = zres.rational_lower()
        pipe = cactus_pipeline(spec, zeta, n)
    return getattr(pipe, name), zeta


def _value_str(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def cmd_series(args) -> int:
    obj, zeta = _series_rows(args.which, args)
    params = {"which": args.which, "d": args.d, "m": args.m, "genus": args.genus,
              "k": args.k, "N": args.N}
    if zeta is not None:
        params["zeta"] = f"{zeta.numerator}/{zeta.denominator}"
    if isinstance(obj, BiSeries):
        if args.format == "json":
            payload = {"series": args.which, "params": params,
                       "coefficients": [[_value_str(c) for c in row]
                                        for row in obj.to_table()]}
            _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
        else:
            lines = ["n,s,value"]
            for nn, row in enumerate(obj.to_table()):
                for s, c in enumerate(row):
                    lines.append(f"{nn},{s},{_value_str(c)}")
            _emit("\n".join(lines) + "\n", args.out)
        return 0
    if args.format == "json":
        payload = {"series": args.which, "params": params,
                   "coefficients": [_value_str(c) for c in obj.coeffs]}
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    else:
        lines = ["n,value"]
        for nn, c in enumerate(obj.coeffs):
            lines.append(f"{nn},{_value_str(c)}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="specrad",
        description="Lower bounds on the spectral radius of vertex-transitive "
                    "graphs via exact circuit undercounting.")
    sub = parser.add_subparsers(dest="command", required=True)

    pb = sub.add_parser("bound", help="compute all applicable bounds")
    _add_shape_args(pb, need_k=True)
    pb.add_argument("-N", type=int, default=64, help="series truncation order")
    pb.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                    help="working precision in digits")
    pb.add_argument("--format", choices=["text", "json"], default="text")
    pb.add_argument("--out", help="write output to this file")
    pb.set_defaults(func=cmd_bound, k=None)

    pv = sub.add_parser("verify", help="check walk counts dominate the undercount")
    _add_shape_args(pv)
    pv.add_argument("--n-max", dest="n_max", type=int, default=12)
    pv.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    pv.add_argument("--cap", type=int, default=DEFAULT_VERTEX_CAP,
                    help="vertex cap for the ball construction")
    pv.add_argument("--format", choices=["text", "json"], default="text")
    pv.add_argument("--out", help="write output to this file")
    pv.set_defaults(func=cmd_verify)

    ps = sub.add_parser("series", help="print series coefficients")
    ps.add_argument("which", choices=["h", "g1", "g2", "g3", "theta",
                                      "free-product", "cycle"])
    _add_shape_args(ps, need_k=True)
    ps.add_argument("-N", type=int, default=64)
    ps.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    ps.add_argument("--format", choices=["csv", "json"], default="csv")
    ps.add_argument("--out", help="write output to this file")
    ps.set_defaults(func=cmd_series)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.func(args)
    except _ArgumentError as exc:
        print(f"specrad: {exc}", file=sys.stderr)
        return 2
    except SizeLimit as exc:
        print(f"specrad: {exc}", file=sys.stderr)
        return 2 if args.command == "verify" else 1
    except SpecradError as exc:
        print(f"specrad: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
