#!/usr/bin/env python3
"""Sweep the extension parameter for the pure inverse-square well and
tabulate the single bound level against the closed form, the shooting
oracle, and the tau-independent scale combination E * (-tau)^(1/P).

Usage: python scripts/tau_level_sweep.py [--p 0.25] [--points 9] [--csv out.csv]
"""

import argparse
import csv
import sys

from sae_radial import (
    RadialProblem,
    SAEParameter,
    find_levels,
    inverse_square_level,
    tau_from_energy,
)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=float, default=0.25, help="exponent parameter in (0, 1/2)")
    ap.add_argument("--m", type=float, default=1.0)
    ap.add_argument("--points", type=int, default=9)
    ap.add_argument("--csv", default="", help="optional CSV output path")
    args = ap.parse_args()

    v0 = (0.25 - args.p**2) / (2.0 * args.m)
    problem = RadialProblem(m=args.m, l=0, v0=v0)
    rows = []
    for i in range(args.points):
        tau = -(10.0 ** (-2.0 + 4.0 * i / (args.points - 1)))
        sae = SAEParameter.from_tau(tau)
        closed = inverse_square_level(problem, sae).energy
        window = (3.0 * closed, closed / 3.0)
        oracle = find_levels(problem, sae, window, 2)
        assert len(oracle.states) == 1
        shot = oracle.states[0].energy
        scale_comb = closed * (-tau) ** (1.0 / args.p)
        back = tau_from_energy(problem, closed).tau
        rows.append(
            {
                "tau": tau,
                "e_closed": closed,
                "e_oracle": shot,
                "rel_dev": abs(shot - closed) / abs(closed),
                "scale_combination": scale_comb,
                "tau_roundtrip": back,
            }
        )
        print(
            f"tau={tau:+.5e}  E={closed:+.12e}  oracle dev={rows[-1]['rel_dev']:.2e}  "
            f"E*(-tau)^(1/P)={scale_comb:+.12e}"
        )
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
        print(f"wrote {args.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
