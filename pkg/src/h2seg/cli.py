"""Command-line interface.

Subcommands: ``hadamard``, ``solve``, ``maxcut``, ``reduce``, ``verify``
and ``selftest``.  Reports are flat ``key: value`` documents with a stable
field order, byte-identical for identical inputs, flags and seeds; elapsed
time goes to stderr so it never perturbs the report.  Exit codes: 0 on
success, 1 when any verification verdict is false, 2 on usage or file
format errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional

from . import selftest as selftest_mod
from .hadamard import sylvester, verify_orthogonality
from .io import FormatError, load_graph, load_instance, save_instance
from .maxcut import maxcut_exact, maxcut_local
from .reduction import (
    min_valid_M,
    orient_edges,
    reduce_graph,
    sufficient_M,
    verify_instance_bounds,
)
from .solvers import solve_center_pairs, solve_exact, solve_local

SIGNS = {1: "+", -1: "-"}


def _emit(out, key, value):
    if isinstance(value, bool):
        value = "true" if value else "false"
    elif isinstance(value, float):
        value = f"{value:.6f}"
    out.write(f"{key}: {value}\n")


def _sides_str(sides) -> str:
    return "".join(str(int(s)) for s in sides)


def _vector_str(v) -> str:
    return "".join(SIGNS[int(x)] for x in v)


def _cmd_hadamard(args, out) -> int:
    code = sylvester(args.order)
    for row in code.rows:
        out.write(_vector_str(row) + "\n")
    if args.verify:
        ok = verify_orthogonality(code)
        _emit(out, "orthogonal", ok)
        return 0 if ok else 1
    return 0


def _cmd_solve(args, out) -> int:
    inst = load_instance(args.input)
    if args.method == "exact":
        result = solve_exact(inst, max_k=args.max_exact_k)
    elif args.method == "local":
        result = solve_local(inst, seed=args.seed, restarts=args.restarts)
    else:
        result = solve_center_pairs(inst)
    _emit(out, "command", "solve")
    _emit(out, "input", args.input)
    _emit(out, "method", result.method)
    _emit(out, "k", inst.k)
    _emit(out, "d", inst.d)
    if args.method == "local":
        _emit(out, "seed", args.seed)
        _emit(out, "restarts", args.restarts)
    _emit(out, "l1_value", result.l1_value)
    _emit(out, "agreement_value", result.agreement_value)
    _emit(out, "partition", _sides_str(result.sides))
    _emit(out, "center_1", _vector_str(result.centers.c1))
    _emit(out, "center_2", _vector_str(result.centers.c2))
    _emit(out, "examined", result.stats.examined)
    _emit(out, "status", "ok")
    return 0


def _cmd_maxcut(args, out) -> int:
    g = load_graph(args.input)
    if args.method == "exact":
        assignment, value = maxcut_exact(g)
    else:
        assignment, value = maxcut_local(g, seed=args.seed, restarts=args.restarts)
    _emit(out, "command", "maxcut")
    _emit(out, "input", args.input)
    _emit(out, "method", args.method)
    _emit(out, "n", g.n)
    _emit(out, "m", g.m)
    if args.method == "local":
        _emit(out, "seed", args.seed)
        _emit(out, "restarts", args.restarts)
    _emit(out, "cut_value", value)
    _emit(out, "assignment", _sides_str(assignment))
    _emit(out, "status", "ok")
    return 0


def _cmd_reduce(args, out) -> int:
    g = load_graph(args.graph)
    inst = reduce_graph(orient_edges(g), args.block_size)
    save_instance(inst, args.out)
    _emit(out, "command", "reduce")
    _emit(out, "graph", args.graph)
    _emit(out, "n", g.n)
    _emit(out, "m", g.m)
    _emit(out, "block_size", args.block_size)
    _emit(out, "k", inst.k)
    _emit(out, "d", inst.d)
    _emit(out, "out", args.out)
    _emit(out, "status", "ok")
    return 0


def _cmd_verify(args, out) -> int:
    g = load_graph(args.graph)
    if args.auto_M:
        _, c = maxcut_exact(g)
        block_size = min_valid_M(g.n, g.m, c)
    else:
        block_size = args.block_size
    report = verify_instance_bounds(
        g, block_size, solver=args.solver, samples=args.samples, seed=args.seed
    )
    _emit(out, "command", "verify")
    _emit(out, "graph", args.graph)
    _emit(out, "solver", args.solver)
    _emit(out, "samples", args.samples)
    _emit(out, "seed", args.seed)
    _emit(out, "n", report.n)
    _emit(out, "m", report.m)
    _emit(out, "M", report.M)
    _emit(out, "c", report.c)
    _emit(out, "c_is_exact", report.c_is_exact)
    _emit(out, "min_valid_M", report.min_M)
    _emit(out, "sufficient_M", sufficient_M(report.n, report.m))
    _emit(out, "yes_bound", report.yes_bound)
    _emit(out, "upper_bound", report.upper_bound)
    _emit(out, "no_instance_bound", report.no_instance_bound)
    for key in sorted(report.achieved):
        _emit(out, f"achieved.{key}", report.achieved[key])
    _emit(out, "gap_applicable", report.gap_applicable)
    for key, ok in report.verdicts.items():
        _emit(out, f"verdict.{key}", ok)
    _emit(out, "status", "ok" if report.all_ok else "verdict_failed")
    return 0 if report.all_ok else 1


def _cmd_selftest(args, out) -> int:
    ok = selftest_mod.run_all(write=lambda line: out.write(line + "\n"))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="h2seg",
        description="Hypercube 2-segmentation toolkit: solvers, Hadamard codes, "
                    "max-cut, and the graph reduction with bound verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hadamard", help="print a Sylvester Hadamard code")
    p.add_argument("--order", type=int, required=True, help="code order, a power of 2")
    p.add_argument("--verify", action="store_true", help="also check orthogonality")

    p = sub.add_parser("solve", help="solve an H2S instance file")
    p.add_argument("--method", choices=["exact", "local", "pairs"], required=True)
    p.add_argument("--input", required=True, help="instance file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--max-exact-k", type=int, default=24, dest="max_exact_k")

    p = sub.add_parser("maxcut", help="cut a graph file")
    p.add_argument("--input", required=True, help="graph file")
    p.add_argument("--method", choices=["exact", "local"], default="exact")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=8)

    p = sub.add_parser("reduce", help="reduce a graph to an H2S instance file")
    p.add_argument("--graph", required=True)
    p.add_argument("--block-size", type=int, required=True, dest="block_size")
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="check the reduction bounds on a graph")
    p.add_argument("--graph", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--block-size", type=int, dest="block_size")
    group.add_argument("--auto-M", action="store_true", dest="auto_M",
                       help="use the smallest block size with a decision gap")
    p.add_argument("--solver", choices=["exact", "local", "pairs"], default="local")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    sub.add_parser("selftest", help="run the full invariant suite")
    return parser


_HANDLERS = {
    "hadamard": _cmd_hadamard,
    "solve": _cmd_solve,
    "maxcut": _cmd_maxcut,
    "reduce": _cmd_reduce,
    "verify": _cmd_verify,
    "selftest": _cmd_selftest,
}


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    t0 = time.perf_counter()
    try:
        status = _HANDLERS[args.command](args, out)
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"elapsed: {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return status


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
