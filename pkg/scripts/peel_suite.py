"""Run a peeling colorer over a seeded suite and tabulate the trace audit.

    python3 scripts/peel_suite.py --mode k8 --count 100
    python3 scripts/peel_suite.py --mode 3conn --count 100 --oracle 30
"""

import argparse
import collections
import sys
import time

from lcol.graph import check_coloring
from lcol.peel import peel_color_3connected, peel_color_k8
from lcol.solver import solve_exact
from lcol.suites import peel_suite


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--mode", choices=["k8", "3conn"], default="k8")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", type=int, default=30, help="confirm with the exact solver up to this many vertices")
    args = p.parse_args()
    colorer = peel_color_k8 if args.mode == "k8" else peel_color_3connected

    hits = collections.Counter()
    bad, worst, confirmed, runs, deleted = 0, 0.0, 0, 0, 0
    for it in peel_suite(args.mode, args.count, args.seed):
        g, lists = it.instance.graph, it.instance.lists
        t = time.perf_counter()
        coloring, trace = colorer(g, lists)
        worst = max(worst, time.perf_counter() - t)
        runs += 1
        bad += not check_coloring(g, lists, coloring)
        deleted = max(deleted, trace.max_deleted())
        hits.update(trace.case_labels())
        if g.n <= args.oracle:
            confirmed += solve_exact(g, lists).colorable

    print(f"mode={args.mode} instances={runs} invalid={bad} max_deleted={deleted} slowest={worst:.2f}s")
    print(f"oracle-confirmed (n<={args.oracle}): {confirmed}")
    for case, count in sorted(hits.items()):
        print(f"  case {case:>2}: {count} instances")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
