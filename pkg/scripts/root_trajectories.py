#!/usr/bin/env python3
"""Trace the mixed-boundary-condition eigenvalue roots of the attractive
Coulomb-plus-inverse-square problem across the extension angle.

Each root stays pinned between two consecutive poles of the level
function as theta runs over (-pi/2, pi/2); the endpoints reproduce the
two closed towers.  Emits one CSV row per angle with the first few
lambda roots (plot-ready).

Usage: python scripts/root_trajectories.py [--p 0.25] [--count 3] [--csv out.csv]
"""

import argparse
import csv
import math
import sys

from sae_radial import RadialProblem, SAEParameter, solve_attractive_coulomb


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=float, default=0.25)
    ap.add_argument("--m", type=float, default=1.0)
    ap.add_argument("--alpha", type=float, default=1.0)
    ap.add_argument("--count", type=int, default=3)
    ap.add_argument("--angles", type=int, default=41)
    ap.add_argument("--csv", default="")
    args = ap.parse_args()

    v0 = (0.25 - args.p**2) / (2.0 * args.m)
    problem = RadialProblem(m=args.m, l=0, v0=v0, coulomb=-args.alpha)
    rows = []
    for i in range(args.angles):
        theta = -math.pi / 2 + math.pi * (i + 0.5) / args.angles
        tau = SAEParameter.from_theta(theta)
        if tau.is_standard or tau.is_additional:
            continue
        result = solve_attractive_coulomb(problem, tau, args.count)
        row = {"theta": theta, "tau": tau.tau}
        for k, state in enumerate(result.states):
            row[f"lambda{k}"] = state.lam
            row[f"e{k}"] = state.energy
        rows.append(row)
        lams = "  ".join(f"{s.lam:.8f}" for s in result.states)
        print(f"theta={theta:+.4f}  tau={tau.tau:+.4e}  lambda: {lams}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
        print(f"wrote {args.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
