"""Command-line entry point.

Exit codes: 0 colorable / claim verified, 1 uncolorable / claim refuted,
2 error (bad input, violated precondition, exhausted budget).
"""

from __future__ import annotations

import argparse
import sys

from .errors import BudgetExceeded, InstanceParseError, LcolError
from .gadgets import gen_complete_minus_clique, gen_fig1, gen_G_k5, gen_H_k5, gen_triangle_augmented
from .graph import Graph, component_distance, small_big_split, validate_f_assignment
from .instance_io import parse_document, write_instance
from .matrix import COLS, REGIMES, ROWS, verify_matrix
from .peel import color_distance3, color_far_components, peel_color_3connected, peel_color_k8
from .peelgen import PeelOptions, gen_peel_instance
from .solver import SolveBudget, Verdict, default_max_nodes, solve_exact
from .structure import has_k5_minor, is_gallai_tree, vertex_connectivity

EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2


def _read(path: str | None):
    if path in (None, "-"):
        return parse_document(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def _print_coloring(coloring) -> None:
    for v in sorted(coloring):
        print(f"c {v} {coloring[v]}")


# ------------------------------------------------------------------ solve


def cmd_solve(args) -> int:
    inst = _read(args.instance)
    res = solve_exact(inst.graph, inst.lists, SolveBudget(args.max_nodes))
    print(f"verdict={res.verdict.value} nodes={res.nodes}")
    if res.verdict is Verdict.BUDGET_EXCEEDED:
        return EXIT_ERROR
    if res.colorable:
        _print_coloring(res.coloring)
        return EXIT_OK
    if res.certificate is not None:
        for block, colors in sorted(res.certificate.block_lists.items(), key=lambda bc: sorted(bc[0])):
            print(f"block {','.join(map(str, sorted(block)))} colors {','.join(map(str, sorted(colors)))}")
    return EXIT_REFUTED


# ------------------------------------------------------------------ check


def _claims(inst) -> dict[str, int]:
    out = {}
    for key, value in inst.meta_dict().items():
        if key.startswith("claimed.") and value.lstrip("-").isdigit():
            out[key.removeprefix("claimed.")] = int(value)
    return out


def cmd_check(args) -> int:
    inst = _read(args.instance)
    g: Graph = inst.graph
    computed: dict[str, int] = {}
    refuted = False
    if args.gallai:
        ok, block = is_gallai_tree(g)
        print(f"gallai_tree={'yes' if ok else 'no'}" + ("" if ok else f" block={sorted(block)}"))
    if args.kappa:
        computed["kappa"] = vertex_connectivity(g)
        print(f"kappa={computed['kappa']}")
    if args.minor:
        found, bags = has_k5_minor(g, max_nodes=args.max_nodes)
        print(f"k5_minor={'yes' if found else 'no'}")
        if found:
            print("branch_sets " + " | ".join(",".join(map(str, sorted(b))) for b in bags))
    if args.dsk is not None:
        small, _ = small_big_split(g, args.dsk)
        computed["d_sk"] = component_distance(g, small)
        print(f"d_sk={computed['d_sk']} k={args.dsk}")
    if args.fassign is not None:
        ok = validate_f_assignment(g, inst.lists, args.fassign)
        print(f"f_assignment={'valid' if ok else 'invalid'} k={args.fassign}")
        refuted |= not ok
    for key, want in sorted(_claims(inst).items()):
        if key in computed:
            agree = computed[key] == want
            print(f"claim {key}={want} {'verified' if agree else f'refuted (computed {computed[key]})'}")
            refuted |= not agree
    return EXIT_REFUTED if refuted else EXIT_OK


# -------------------------------------------------------------------- gen


def _k5_base():
    base = Graph.from_edges(5, [(a, b) for a in range(5) for b in range(a + 1, 5)])
    return base, {v: [1, 2, 3, 4] for v in range(5)}


def _octahedron_base():
    edges = [(a, b) for a in range(6) for b in range(a + 1, 6) if b - a != 3]
    return Graph.from_edges(6, edges), {v: [1, 2, 3, 4] for v in range(6)}


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "fig1":
        inst = gen_fig1(args.k if args.k is not None else 4)
    elif kind == "kplus":
        inst = gen_complete_minus_clique(args.k if args.k is not None else 4)
    elif kind == "thm7":
        base, lists = _k5_base() if args.base == "k5" else _octahedron_base()
        inst = gen_triangle_augmented(base, lists, args.k if args.k is not None else 7)
    elif kind == "h5":
        inst = gen_H_k5(args.a, args.b)
    elif kind == "g5":
        inst = gen_G_k5()
    else:
        opts = PeelOptions(
            shapes=tuple(args.shape or ()),
            template=args.template,
            kappa=args.min_kappa,
            max_kappa=args.max_kappa,
        )
        inst = gen_peel_instance(args.seed, args.k if args.k is not None else 8, args.spacing, opts)
    sys.stdout.write(write_instance(inst.graph, inst.lists, inst.meta.as_lines()))
    return EXIT_OK


# ------------------------------------------------------------------- peel


def cmd_peel(args) -> int:
    inst = _read(args.instance)
    g, lists = inst.graph, inst.lists
    budget = SolveBudget(args.max_nodes)
    trace = None
    if args.mode == "k8":
        coloring, trace = peel_color_k8(g, lists, args.k, budget=budget)
    elif args.mode == "3conn":
        coloring, trace = peel_color_3connected(g, lists, args.k, allow_k6=args.k == 6, budget=budget)
    elif args.mode == "d3":
        coloring = color_distance3(g, lists, budget=budget)
    else:
        coloring = color_far_components(g, lists, args.k, budget=budget)
    print(f"verdict=colorable mode={args.mode} k={args.k}")
    if trace is not None:
        print(f"cases={','.join(sorted(trace.case_labels()))} max_deleted={trace.max_deleted()}")
        if args.trace:
            print("\n".join(trace.lines()))
    _print_coloring(coloring)
    return EXIT_OK


# ---------------------------------------------------------- verify-paper


def _cell_arg(text: str):
    try:
        regime, k, d = text.split(":")
        cell = (regime, int(k), int(d))
    except ValueError:
        raise argparse.ArgumentTypeError("expected REGIME:K:D, e.g. 3-4:7:3") from None
    if cell[0] not in REGIMES or cell[1] not in ROWS or cell[2] not in COLS:
        raise argparse.ArgumentTypeError(f"regime in {REGIMES}, k in {ROWS}, d in {COLS}")
    return cell


def cmd_verify(args) -> int:
    report = verify_matrix(
        seed=args.seed,
        per_cell=args.per_cell,
        max_nodes=args.max_nodes,
        only=args.cell or None,
        jobs=args.jobs,
    )
    sys.stdout.write(report.text(timings=args.timings))
    return EXIT_OK if report.agrees else EXIT_REFUTED


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--max-nodes",
        type=int,
        default=default_max_nodes(),
        help="search node budget (default: $LCOL_MAX_NODES or 10^8)",
    )
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="lcol", description="List coloring of K5-minor-free graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="exact list coloring")
    s.add_argument("instance", nargs="?", help="instance file (default: stdin)")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("check", parents=[common], help="structural checks")
    c.add_argument("instance", nargs="?")
    c.add_argument("--gallai", action="store_true", help="is every block complete or an odd cycle")
    c.add_argument("--kappa", action="store_true", help="vertex connectivity")
    c.add_argument("--minor", action="store_true", help="exact K5-minor test")
    c.add_argument("--dsk", type=int, metavar="K", help="distance between small-degree clusters")
    c.add_argument("--fassign", type=int, metavar="K", help="|L(v)| = min(d(v), K) for all v")
    c.set_defaults(func=cmd_check)

    g = sub.add_parser("gen", parents=[common], help="write a generated instance to stdout")
    g.add_argument("kind", choices=["fig1", "kplus", "thm7", "h5", "g5", "peel"])
    g.add_argument("--k", type=int)
    g.add_argument("--base", choices=["k5", "octahedron"], default="k5", help="thm7 base graph")
    g.add_argument("--a", type=int, default=7, help="h5 color of x")
    g.add_argument("--b", type=int, default=12, help="h5 color of y")
    g.add_argument("--spacing", type=int, default=3, help="peel: minimum cluster distance")
    g.add_argument("--shape", action="append", help="peel: cluster shape to include (repeatable)")
    g.add_argument("--template", choices=["7a", "7b"], help="peel: nested end-block template")
    g.add_argument("--min-kappa", type=int, choices=[3], help="peel: require 3-connectivity")
    g.add_argument("--max-kappa", type=int, help="peel: upper bound on connectivity")
    g.set_defaults(func=cmd_gen)

    pe = sub.add_parser("peel", parents=[common], help="color with a peeling algorithm")
    pe.add_argument("instance", nargs="?")
    pe.add_argument("--k", type=int, default=8)
    pe.add_argument("--mode", choices=["k8", "3conn", "d3", "far"], default="k8")
    pe.add_argument("--trace", action="store_true", help="print the per-component case trace")
    pe.set_defaults(func=cmd_peel)

    v = sub.add_parser("verify-paper", parents=[common], help="rebuild the k x d(S_k) matrix")
    v.add_argument("--per-cell", type=int, default=20, help="battery size for colorable entries")
    v.add_argument("--jobs", type=int, default=1, help="cells run in parallel processes")
    v.add_argument("--cell", action="append", type=_cell_arg, help="only this REGIME:K:D (repeatable)")
    v.add_argument("--timings", action="store_true", help="add wall-clock times (not reproducible)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InstanceParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except BudgetExceeded as exc:
        print(f"budget exceeded after {exc.nodes} nodes: {exc}", file=sys.stderr)
    except (LcolError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
