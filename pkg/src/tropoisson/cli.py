"""Command-line entry point: ``python -m tropoisson <command> ...``.

Exit codes: 0 success, 1 parse/usage error, 2 empty cone, 3 reality failure,
4 verification failure.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import formats
from .formats import FormatError
from .groups import FAMILIES, GSTAR, GroupBracketSpec, assemble, verify_gz
from .networks import (determinant, matrix_from_network, minor_lindstrom, network_from_json,
                       submatrix, symbolic_weighting)
from .poisson import check_jacobi
from .polyhedra import cone_interior_sample, cone_is_empty, cone_remove_redundant
from .report import Report
from .tropical import (RealityError, constant_bracket, deviation_decreasing, limit_sample,
                       max_deviation, tropical_cone)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_EMPTY = 2
EXIT_REALITY = 3
EXIT_VERIFY = 4

MAX_N = {GSTAR: 4}
DEFAULT_MAX_N = 6
ROUNDOFF = 1e-12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would exit with 2, which is reserved for "empty cone"
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        formats.write_text(path, text)


def _check_n(n, family=None, low=1):
    high = MAX_N.get(family, DEFAULT_MAX_N)
    if not low <= n <= high:
        raise UsageError(f"n must be between {low} and {high}"
                         + (f" for family {family}" if family else ""))


def _index_list(s):
    try:
        out = [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty index list")
    return out


def _float_list(s):
    try:
        return [float(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}")


def _finish(rep: Report, json_out):
    print(rep.summary())
    if json_out:
        formats.write_text(json_out, formats.dumps(formats.report_to_json(rep)))
    return EXIT_OK if rep.passed else EXIT_VERIFY


def cmd_tropicalize(args) -> int:
    P = formats.structure_from_json(formats.read_json(args.input))
    cone = tropical_cone(P)
    if cone_is_empty(cone):
        print(f"empty cone: the inequalities of {args.input} have no common solution",
              file=sys.stderr)
        return EXIT_EMPTY
    if args.reduce:
        cone = cone_remove_redundant(cone)
    try:
        cb = constant_bracket(P)
    except RealityError as e:
        print(f"reality check failed: {e}", file=sys.stderr)
        return EXIT_REALITY
    cone_doc = formats.cone_to_json(cone)
    br_doc = formats.bracket_to_json(cb)
    if args.cone_out is None and args.bracket_out is None:
        _emit(formats.dumps({"cone": cone_doc, "bracket": br_doc}), None)
    else:
        if args.cone_out:
            _emit(formats.dumps(cone_doc), args.cone_out)
        if args.bracket_out:
            _emit(formats.dumps(br_doc), args.bracket_out)
    return EXIT_OK


def cmd_group(args) -> int:
    _check_n(args.n, args.family)
    P = assemble(GroupBracketSpec(args.n, args.family))
    _emit(formats.dumps(formats.structure_to_json(P)), args.out)
    return EXIT_OK


def cmd_verify_gz(args) -> int:
    _check_n(args.n, GSTAR, low=2)
    return _finish(verify_gz(args.n), args.json_out)


def cmd_jacobi(args) -> int:
    _check_n(args.n, args.family)
    P = assemble(GroupBracketSpec(args.n, args.family))
    t0 = time.perf_counter()
    count, bad = check_jacobi(P)
    rep = Report(f"Jacobi identity, {args.family}, n = {args.n}")
    rep.add(f"jacobiator vanishes on all {count} triples", not bad,
            {"triples": count, "failing": bad[:20], "seconds": round(time.perf_counter() - t0, 3)})
    return _finish(rep, args.json_out)


def cmd_limit_sample(args) -> int:
    if args.input:
        P = formats.structure_from_json(formats.read_json(args.input))
        label = args.input
    else:
        if args.n is None:
            raise UsageError("give --n or --input")
        _check_n(args.n, GSTAR)
        P = assemble(GroupBracketSpec(args.n, GSTAR))
        label = f"G*, n = {args.n}"
    cone = tropical_cone(P)
    if cone_is_empty(cone):
        print("empty cone: no interior point to sample", file=sys.stderr)
        return EXIT_EMPTY
    eta = cone_interior_sample(cone)
    phis = {v.name: args.phi * (a + 1) for a, v in enumerate(P.registry) if v.kind == "complex"}
    try:
        rows = limit_sample(P, eta, phis, args.t, cone=cone)
    except RealityError as e:
        print(f"reality check failed: {e}", file=sys.stderr)
        return EXIT_REALITY
    if args.csv_out:
        formats.write_text(args.csv_out, formats.rows_to_csv(rows))
    dev = max_deviation(rows)
    ts = sorted(dev)
    rep = Report(f"scaling limit, {label}")
    rep.add("sample point", True, {"eta": [str(x) for x in eta], "phi": phis})
    rep.add("deviation decreases in t", deviation_decreasing(dev, ROUNDOFF),
            {"deviation": {str(t): dev[t] for t in ts}, "roundoff floor": ROUNDOFF})
    rep.add(f"deviation at t = {ts[-1]:g} below {args.tol:g}", dev[ts[-1]] < args.tol,
            dev[ts[-1]])
    return _finish(rep, args.json_out)


def cmd_lindstrom(args) -> int:
    net, weights = network_from_json(formats.read_json(args.network))
    if len(args.rows) != len(args.cols):
        raise UsageError("--rows and --cols need the same length")
    for i in args.rows + args.cols:
        if not 1 <= i <= net.n:
            raise UsageError(f"index {i} out of range 1..{net.n}")
    if weights is None:
        _, weights = symbolic_weighting(net)
    by_paths = minor_lindstrom(net, weights, args.rows, args.cols)
    by_det = determinant(submatrix(matrix_from_network(net, weights), args.rows, args.cols))
    print(f"minor rows {args.rows} cols {args.cols} = {by_paths}")
    rep = Report(f"Lindstrom lemma on {args.network}")
    rep.add("path-system sum equals determinant", by_paths == by_det,
            {"paths": str(by_paths), "determinant": str(by_det)})
    return _finish(rep, args.json_out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tropoisson", description="Tropicalize Poisson brackets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("tropicalize", help="cone and constant bracket of a bracket spec")
    s.add_argument("input")
    s.add_argument("--cone-out")
    s.add_argument("--bracket-out")
    s.add_argument("--reduce", action="store_true", help="drop redundant inequalities")
    s.set_defaults(func=cmd_tropicalize)

    s = sub.add_parser("group", help="write the B+, G0* or G* bracket as a spec file")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--family", choices=FAMILIES, default=GSTAR)
    s.add_argument("--out")
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("verify-gz", help="check that G* tropicalizes to Gelfand-Zeitlin")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--json-out")
    s.set_defaults(func=cmd_verify_gz)

    s = sub.add_parser("jacobi", help="Jacobi identity on all generator triples")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--family", choices=FAMILIES, default=GSTAR)
    s.add_argument("--json-out")
    s.set_defaults(func=cmd_jacobi)

    s = sub.add_parser("limit-sample", help="numerical approach to the constant bracket")
    s.add_argument("--n", type=int)
    s.add_argument("--input", help="bracket spec instead of G*")
    s.add_argument("--t", type=_float_list, default=[2.0, 5.0, 10.0, 20.0])
    s.add_argument("--phi", type=float, default=0.3, help="angle step for complex variables")
    s.add_argument("--tol", type=float, default=1e-6)
    s.add_argument("--csv-out")
    s.add_argument("--json-out")
    s.set_defaults(func=cmd_limit_sample)

    s = sub.add_parser("lindstrom", help="network minor via disjoint path systems")
    s.add_argument("--network", required=True)
    s.add_argument("--rows", type=_index_list, required=True)
    s.add_argument("--cols", type=_index_list, required=True)
    s.add_argument("--json-out")
    s.set_defaults(func=cmd_lindstrom)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, FormatError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
