#!/usr/bin/env python3
"""Sweep heterogeneity at fixed total storage and report the coding gain.

Holds N and the storage sum fixed, varies how unevenly the storage is
split across the three nodes, and prints the optimal load next to the
uncoded load for each split.  Useful for eyeballing how much skew costs.
"""

import argparse
import csv
import sys

from hetcdc.model import validate_config
from hetcdc.placement_k3 import classify_regime, optimal_load


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, default=12)
    ap.add_argument("--total", type=int, default=20,
                    help="fixed M1+M2+M3 to distribute")
    ap.add_argument("--out", default="-", help="CSV output path, - for stdout")
    args = ap.parse_args()

    if args.total < args.N:
        print(f"total storage {args.total} cannot cover N={args.N}",
              file=sys.stderr)
        return 1

    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        writer = csv.writer(fh)
        writer.writerow(["M1", "M2", "M3", "N", "regime",
                         "L_star", "L_uncoded", "gain"])
        for M1 in range(1, args.total // 3 + 1):
            for M2 in range(M1, (args.total - M1) // 2 + 1):
                M3 = args.total - M1 - M2
                if M3 < M2:
                    continue
                cfg = validate_config(3, [M1, M2, M3], args.N)
                star = optimal_load(cfg)
                uncoded = sum(cfg.N - m for m in cfg.M)
                gain = float(uncoded / star) if star else float("inf")
                writer.writerow([M1, M2, M3, args.N,
                                 classify_regime(cfg).name,
                                 str(star), uncoded, f"{gain:.3f}"])
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
