"""Solve every gadget with the exact solver and report sizes, nodes and times."""

import sys
import time

from lcol.gadgets import (
    G5_COPIES,
    g5_copy_subinstance,
    gen_complete_minus_clique,
    gen_fig1,
    gen_G_k5,
    gen_H_k5,
    gen_triangle_augmented,
)
from lcol.graph import Graph
from lcol.solver import solve_exact


def k5_base():
    g = Graph.from_edges(5, [(a, b) for a in range(5) for b in range(a + 1, 5)])
    return g, {v: {1, 2, 3, 4} for v in range(5)}


def row(name, g, lists):
    t = time.perf_counter()
    res = solve_exact(g, lists)
    n = g.n if isinstance(g, Graph) else len(g)
    print(f"{name:<22} n={n:<4} verdict={res.verdict.value:<12} nodes={res.nodes:<8} {time.perf_counter() - t:.3f}s")
    return res.colorable


def main() -> int:
    colorable = 0
    for k in range(3, 9):
        inst = gen_fig1(k)
        colorable += row(f"fig1 k={k}", inst.graph, inst.lists)
    for k in range(3, 9):
        inst = gen_complete_minus_clique(k)
        colorable += row(f"kplus k={k}", inst.graph, inst.lists)
    for k in (5, 6, 7):
        inst = gen_triangle_augmented(*k5_base(), k)
        colorable += row(f"triangles on K5 k={k}", inst.graph, inst.lists)
    inst = gen_H_k5(7, 12)
    colorable += row("H(7,12)", inst.graph, inst.lists)
    g5 = gen_G_k5()
    for c in range(G5_COPIES):
        adj, lists = g5_copy_subinstance(g5, c)
        colorable += row(f"g5 copy {c}", adj, lists)
    print(f"colorable gadgets: {colorable} (expected 0)")
    return 1 if colorable else 0


if __name__ == "__main__":
    sys.exit(main())
