#!/usr/bin/env python3
"""Exhaustively check the closed-form K=3 load against the brute-force oracle.

For every sorted feasible instance with N up to --Nmax, compare the
closed-form minimum with an exhaustive search over storage profiles, and
also check that the best converse bound meets it.  Prints one line per N
and a final verdict.
"""

import argparse
import sys
import time

from hetcdc.converse_bounds import lower_bound
from hetcdc.model import validate_config
from hetcdc.oracle import min_load_bruteforce
from hetcdc.placement_k3 import classify_regime, optimal_load


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--Nmax", type=int, default=8)
    ap.add_argument("--budget", type=int, default=10_000_000)
    args = ap.parse_args()

    bad = []
    total = 0
    start = time.time()
    for N in range(1, args.Nmax + 1):
        count = 0
        for M1 in range(1, N + 1):
            for M2 in range(M1, N + 1):
                for M3 in range(M2, N + 1):
                    if M1 + M2 + M3 < N:
                        continue
                    cfg = validate_config(3, [M1, M2, M3], N)
                    closed = optimal_load(cfg)
                    oracle, _ = min_load_bruteforce(cfg, budget=args.budget)
                    bound = lower_bound(cfg).max_bound
                    if not (closed == oracle == bound):
                        bad.append((M1, M2, M3, N, closed, oracle, bound))
                    count += 1
        total += count
        print(f"N={N:3d}: {count:5d} instances checked")
    elapsed = time.time() - start

    if bad:
        print(f"\nMISMATCH on {len(bad)} of {total} instances:")
        for M1, M2, M3, N, closed, oracle, bound in bad[:20]:
            r = classify_regime(validate_config(3, [M1, M2, M3], N))
            print(f"  M=({M1},{M2},{M3}) N={N} [{r.name}] "
                  f"closed={closed} oracle={oracle} bound={bound}")
        return 1
    print(f"\nOK: closed form == oracle == best bound on all {total} "
          f"instances ({elapsed:.1f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
