"""Rebuild the connectivity x k x d(S_k) matrix and write the report.

    python3 scripts/run_matrix.py --seed 0 --per-cell 20 --out matrix.txt
"""

import argparse
import sys
import time

from lcol.matrix import col_label, row_label, verify_matrix


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--per-cell", type=int, default=20)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="report path (default: stdout)")
    args = p.parse_args()

    t0 = time.perf_counter()

    def progress(cell):
        print(
            f"[{time.perf_counter() - t0:7.1f}s] kappa={cell.regime} k={row_label(cell.k)} "
            f"d={col_label(cell.d)} {cell.short()}",
            file=sys.stderr,
        )

    report = verify_matrix(seed=args.seed, per_cell=args.per_cell, jobs=args.jobs, progress=progress)
    text = report.text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"done in {time.perf_counter() - t0:.1f}s, verdict={'agree' if report.agrees else 'disagree'}", file=sys.stderr)
    return 0 if report.agrees else 1


if __name__ == "__main__":
    sys.exit(main())
