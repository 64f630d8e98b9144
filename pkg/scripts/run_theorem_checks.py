#!/usr/bin/env python3
"""Run every named stability-threshold check and print a summary table.

Equivalent to `mcs-adi verify --theorem all` with a per-threshold breakdown.
Exit code 1 if any check fails.
"""

import argparse
import sys

from mcs_adi.analysis import verify_theorem


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=None,
                    help="Monte-Carlo samples for the sampled checks")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args()

    failed = 0
    total = 0
    for n in (1, 2, 3, 4, 5):
        checks = verify_theorem(n, seed=args.seed, samples=args.samples,
                                threads=args.threads)
        good = sum(c.passed for c in checks)
        total += len(checks)
        failed += len(checks) - good
        print(f"\nthreshold {n}: {good}/{len(checks)} checks pass")
        for c in checks:
            mark = "ok  " if c.passed else "FAIL"
            print(f"  [{mark}] {c.name:<40} measured = {c.measured:.10g}")
            if c.detail:
                print(f"         {c.detail}")
    print(f"\n{total - failed}/{total} checks passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
