"""Loss of constant-subsidy plans against the DP schedule over a grid of weights."""

import argparse

import numpy as np

from dynlab import GaussianParams
from dynlab.interventions import GenericUpdateMap, compute_delta, cost_grid, dp_optimal_subsidy, simulate_subsidy


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rho", type=float, default=0.6)
    ap.add_argument("--grid", type=int, default=101, help="DP wealth and cost grid size")
    args = ap.parse_args()

    fmap = GenericUpdateMap.from_params(GaussianParams(0.1, 0.95, 1.4, 1.1, 0.5))
    delta = compute_delta(fmap).delta
    mu0 = fmap.z1
    print(f"z1={fmap.z1:.6f} z2={fmap.z2:.6f} delta={delta:.6f}")
    print("lambda  best_const_C  const_loss  dp_true_loss  dp_steps")
    for lam in np.linspace(0.1, 0.9, 9):
        costs = cost_grid(delta, fmap.z2, mu0, 64)
        losses = [simulate_subsidy(fmap, float(c), lam, args.rho, mu0).loss for c in costs]
        best = int(np.argmin(losses))
        dp = dp_optimal_subsidy(fmap, lam, args.rho, mu0, args.grid, args.grid)
        print(f"{lam:6.2f}  {costs[best]:12.6f}  {losses[best]:10.6f}  {dp.true_loss:12.6f}  {len(dp.schedule):8d}")


if __name__ == "__main__":
    main()
