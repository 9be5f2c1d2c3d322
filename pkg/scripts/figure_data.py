"""Dump update-map curves and cobweb paths for the two reference parameter sets as CSV."""

import argparse
import csv
from pathlib import Path

import numpy as np

from dynlab import GaussianParams, cobweb_points, find_fixed_points, iterate, update_f
from dynlab.dynamics import write_cobweb_csv

REFERENCE = {
    "single": GaussianParams(alpha=0.1, beta=0.6, gamma=0.4, sigma=1.1, tau=0.2),
    "bistable": GaussianParams(alpha=0.1, beta=0.95, gamma=1.4, sigma=1.1, tau=0.5),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Path("results/figures"))
    ap.add_argument("--points", type=int, default=401)
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    xs = np.linspace(0.0, 1.0, args.points)
    for name, params in REFERENCE.items():
        with open(args.out_dir / f"{name}_curve.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "f"])
            w.writerows(zip(xs.tolist(), update_f(params, xs).tolist()))
        report = find_fixed_points(lambda x: update_f(params, x))
        print(name, [f"{z:.6f}" for z in report.zs], [p.stability for p in report.points])
        for x0 in (0.05, 0.5, 0.95):
            traj = iterate(lambda x: float(update_f(params, x)), x0)
            with open(args.out_dir / f"{name}_cobweb_{x0}.csv", "w", newline="") as fh:
                write_cobweb_csv(cobweb_points(traj), fh)


if __name__ == "__main__":
    main()
