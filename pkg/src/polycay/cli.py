"""Command line interface.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or
parse error, 3 a resource cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import toric as toric_mod
from .ehrhart import (
    codegree,
    delta_polynomial,
    gorenstein_index,
    is_reflexive,
    normalized_volume,
)
from .errors import ParseError, PolycayError, ResourceCapError
from .formats import read_instance
from .geometry import is_idp, oda_holds
from .reports import SWEEP_KINDS, run_instance_report, run_sweep

EXIT_OK = 0
EXIT_MATH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _dump_json(doc, path=None) -> None:
    text = json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _print_report_table(report) -> None:
    doc = report.to_json_dict()
    print(f"instance: d={report.d} poset={report.poset_relations} graph={report.graph_edges}")
    for key, value in sorted(doc["results"].items()):
        print(f"  {key:28} {value}")
    if report.violations:
        print("violations:")
        for item in report.violations:
            print(f"  ! {item}")
    else:
        print("violations: none")
    for item in report.resource_errors:
        print(f"  incomplete: {item}")


def _cmd_report(args) -> int:
    p = read_instance(args.poset, "poset")
    g = read_instance(args.graph, "graph")
    report = run_instance_report(
        p,
        g,
        kmax_cayley=args.kmax,
        kmax_minkowski=args.kmax,
        toric_degree=args.toric_degree,
        tie_break=args.tie_break,
    )
    if args.json:
        _dump_json(report.to_json_dict(include_timings=args.timings))
    else:
        _print_report_table(report)
    if report.violations:
        return EXIT_MATH
    if report.incomplete:
        return EXIT_RESOURCE
    return EXIT_OK


def _cmd_sweep(args) -> int:
    mode = "labeled" if args.labeled else "up_to_iso"
    opts = {}
    if args.kind == "main-theorem":
        opts["full"] = not args.light
        if args.toric_degree is not None:
            opts["toric_degree"] = args.toric_degree
    if args.kind == "chain-cayley-idp-search":
        opts["kmax_fail"] = args.kmax_fail
        if args.witness_kind != "any":
            opts["witness_kind"] = args.witness_kind
    report = run_sweep(
        args.kind,
        args.d,
        mode,
        jobs=args.jobs,
        stop_at_first_witness=not args.all,
        limit=args.limit,
        **opts,
    )
    doc = report.to_json_dict(include_timings=args.timings)
    if args.json is not None:
        _dump_json(doc, args.json or None)
    else:
        print(
            f"sweep {report.kind} d={report.d} mode={report.mode}: "
            f"{report.pass_count}/{report.instance_count} pass, "
            f"{len(report.failures)} failures, {len(report.witnesses)} witnesses"
        )
        for failure in report.failures[:20]:
            print(f"  ! {failure}")
        for witness in report.witnesses[:20]:
            print(f"  * {witness}")
    if args.kind != "chain-cayley-idp-search" and report.failures:
        return EXIT_MATH
    if report.incomplete:
        return EXIT_RESOURCE
    return EXIT_OK


def _cmd_compute(args) -> int:
    paths = args.input.split(",")
    polys = [read_instance(path, "vrep") for path in paths]
    op = args.op
    result: object
    if op == "oda":
        if len(polys) != 2:
            raise ParseError("--op oda needs two comma-separated vrep files")
        result = oda_holds(polys[0], polys[1])
    elif op == "delta":
        result = list(delta_polynomial(polys[0]).coeffs)
    elif op == "codegree":
        result = codegree(polys[0])
    elif op == "volume":
        result = normalized_volume(polys[0])
    elif op == "idp":
        ok, witness = is_idp(polys[0], args.kmax or polys[0].dim)
        result = {
            "k_max": args.kmax or polys[0].dim,
            "ok": ok,
            "witness": None if witness is None else {"k": witness[0], "point": list(witness[1])},
        }
    elif op == "gorenstein":
        result = gorenstein_index(polys[0])
    elif op == "reflexive":
        result = is_reflexive(polys[0])
    else:
        raise ParseError(f"unknown op {op!r}")
    if args.json:
        _dump_json({"op": op, "result": result})
    else:
        print(f"{op}: {result}")
    return EXIT_OK


def _cmd_toric(args) -> int:
    p = read_instance(args.poset, "poset")
    g = read_instance(args.graph, "graph")
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        basis = toric_mod.claimed_basis(p, g, args.degree, args.tie_break)
    table = toric_mod.cayley_variable_table(p, g)
    order = toric_mod.make_order(table, args.tie_break)
    ok, failure = toric_mod.verify_basis(basis, order, args.degree)
    gens = toric_mod.truncated_initial_ideal(order, args.degree)
    squarefree, max_degree = toric_mod.squarefree_profile(gens)
    doc = {
        "degree": args.degree,
        "basis_size": len(basis),
        "verified": ok,
        "first_failure": None
        if failure is None
        else {"degree": failure[0], "monomial": order.monomial_name(failure[1])},
        "squarefree": squarefree,
        "max_generator_degree": max_degree,
        "basis": sorted(b.pretty(order) for b in basis),
    }
    if args.json:
        _dump_json(doc)
    else:
        print(f"claimed basis ({len(basis)} binomials), verified={ok}")
        print(f"initial ideal squarefree={squarefree}, max generator degree={max_degree}")
        for line in doc["basis"]:
            print(f"  {line}")
    return EXIT_OK if ok else EXIT_MATH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycay",
        description="Exact checks for Cayley/Minkowski sums of order and stable set polytopes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_report = sub.add_parser("report", help="full theorem report for one instance")
    p_report.add_argument("--poset", required=True)
    p_report.add_argument("--graph", required=True)
    p_report.add_argument("--kmax", type=int, default=None)
    p_report.add_argument("--toric-degree", type=int, default=None)
    p_report.add_argument("--tie-break", choices=toric_mod.TIE_BREAKS, default="card_then_lex")
    p_report.add_argument("--json", action="store_true")
    p_report.add_argument("--timings", action="store_true")
    p_report.set_defaults(fn=_cmd_report)

    p_sweep = sub.add_parser("sweep", help="corpus sweep or witness search")
    p_sweep.add_argument("--kind", choices=SWEEP_KINDS, required=True)
    p_sweep.add_argument("--d", type=int, required=True)
    mode = p_sweep.add_mutually_exclusive_group()
    mode.add_argument("--labeled", action="store_true")
    mode.add_argument("--iso", action="store_true")
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.add_argument("--json", nargs="?", const="", default=None, metavar="OUT")
    p_sweep.add_argument("--all", action="store_true", help="do not stop at the first witness")
    p_sweep.add_argument("--light", action="store_true", help="codegree/Gorenstein checks only")
    p_sweep.add_argument("--limit", type=int, default=None)
    p_sweep.add_argument("--toric-degree", type=int, default=None)
    p_sweep.add_argument("--kmax-fail", type=int, default=3)
    p_sweep.add_argument(
        "--witness-kind", choices=("any", "cayley-only", "both"), default="any"
    )
    p_sweep.add_argument("--timings", action="store_true")
    p_sweep.set_defaults(fn=_cmd_sweep)

    p_compute = sub.add_parser("compute", help="one operation on vrep input")
    p_compute.add_argument(
        "--op",
        choices=("delta", "codegree", "volume", "idp", "gorenstein", "reflexive", "oda"),
        required=True,
    )
    p_compute.add_argument("--input", required=True, metavar="FILE[,FILE]")
    p_compute.add_argument("--kmax", type=int, default=None)
    p_compute.add_argument("--json", action="store_true")
    p_compute.set_defaults(fn=_cmd_compute)

    p_toric = sub.add_parser("toric", help="claimed Groebner basis and verification")
    p_toric.add_argument("--poset", required=True)
    p_toric.add_argument("--graph", required=True)
    p_toric.add_argument("--degree", type=int, required=True)
    p_toric.add_argument("--tie-break", choices=toric_mod.TIE_BREAKS, default="card_then_lex")
    p_toric.add_argument("--json", action="store_true")
    p_toric.set_defaults(fn=_cmd_toric)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ResourceCapError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PolycayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
