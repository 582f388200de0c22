#!/usr/bin/env python3
"""Level spacings of the singular oscillator across boundary conditions.

At tau = 0 and tau = +-inf the spectrum is strictly equidistant (two
shifted harmonic towers); any other extension parameter mixes the
branches and visibly modulates the gaps.

Usage: python scripts/equidistance_check.py [--g 1.0] [--levels 5]
"""

import argparse
import math
import sys

from sae_radial import RadialProblem, SAEParameter, oscillator_tail, spacing_report


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--g", type=float, default=1.0, help="oscillator strength g r^2")
    ap.add_argument("--p", type=float, default=0.25)
    ap.add_argument("--m", type=float, default=1.0)
    ap.add_argument("--levels", type=int, default=5)
    args = ap.parse_args()

    v0 = (0.25 - args.p**2) / (2.0 * args.m)
    problem = RadialProblem(
        m=args.m, l=0, v0=v0,
        tail=oscillator_tail(args.g), tail_label=f"oscillator:{args.g}",
    )
    omega = math.sqrt(2.0 * args.g / args.m)
    print(f"harmonic gap 2*omega = {2.0 * omega:.12f}")
    e_char = omega
    window = (-30.0 * e_char, (2.0 * args.levels + 4.0) * e_char)
    for label, tau in (
        ("tau=0   ", SAEParameter.from_tau(0.0)),
        ("tau=inf ", SAEParameter.from_tau(math.inf)),
        ("tau=-1  ", SAEParameter.from_tau(-1.0)),
        ("tau=-0.2", SAEParameter.from_tau(-0.2)),
    ):
        gaps = spacing_report(problem, tau, args.levels, e_window=window)
        mean = sum(gaps) / len(gaps)
        spread = max(abs(g - mean) for g in gaps) / mean
        shown = "  ".join(f"{g:.8f}" for g in gaps)
        print(f"{label} gaps: {shown}   spread {spread:.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
