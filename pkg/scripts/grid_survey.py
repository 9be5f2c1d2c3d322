"""Fraction of parameter tuples with three fixed points, for each survey filter."""

import argparse
import time

from dynlab.fixed_points import FILTERS, grid_multiplicity_survey


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=10, help="interior points per axis")
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()
    for name in FILTERS:
        start = time.perf_counter()
        try:
            frac, cases = grid_multiplicity_survey(args.grid, name, args.workers)
        except ValueError as exc:
            print(f"{name:12s} skipped: {exc}")
            continue
        print(f"{name:12s} fraction={frac:.4f} cases={len(cases)} ({time.perf_counter() - start:.1f}s)")


if __name__ == "__main__":
    main()
