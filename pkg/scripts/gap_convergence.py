#!/usr/bin/env python3
"""Tabulate the scaled profile gap (gap + 2V) sqrt(v) along a dyadic
volume grid.

The column settles to a mass-proportional constant; the table prints the
measured values next to the two candidate constants 8 sqrt(2) pi^{3/2} m
and 16 sqrt(2) pi^{5/2} m so the limit can be read off directly.
"""

import argparse
import math
import sys

import numpy as np

from ahiso.models import make_ads_schwarzschild
from ahiso.profiles import gap_table

LOW = 8.0 * math.sqrt(2.0) * math.pi**1.5
HIGH = 16.0 * math.sqrt(2.0) * math.pi**2.5


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--v-max", type=float, default=1e6)
    parser.add_argument("--n", type=int, default=8, help="dyadic grid points")
    parser.add_argument(
        "--masses", type=float, nargs="+", default=[0.5, 1.0, 2.0]
    )
    args = parser.parse_args()

    grid = args.v_max * 4.0 ** -np.arange(args.n - 1, -1, -1)
    for m in args.masses:
        rows = gap_table(make_ads_schwarzschild(m), grid)
        print(f"mass {m}:")
        print(f"  {'v':>12s}  {'scaled gap':>14s}  {'per mass':>12s}")
        for row in rows:
            print(
                f"  {row.v:12.5g}  {row.scaled_gap:14.6f}  "
                f"{row.scaled_gap / m:12.6f}"
            )
        last = rows[-1].scaled_gap
        print(f"  candidate 8 sqrt2 pi^1.5 m  = {LOW * m:14.6f}  "
              f"(off by {abs(last - LOW * m) / (LOW * m):.2%})")
        print(f"  candidate 16 sqrt2 pi^2.5 m = {HIGH * m:14.6f}  "
              f"(off by {abs(last - HIGH * m) / (HIGH * m):.2%})")
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
