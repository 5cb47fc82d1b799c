#!/usr/bin/env python3
"""Scan the level count n in the localization sandwich at desk scale."""
import argparse
import sys

from airylab.sao import sandwich_check
from airylab.variational import DiscretizationParams


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--z", type=float, default=-1.0)
    ap.add_argument("--t", type=float, default=1.0)
    ap.add_argument("--beta", type=float, default=2.0)
    ap.add_argument("--n", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--samples", type=int, default=4000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print("n,lower,lower_se,middle,middle_se,upper,upper_se")
    for n in args.n:
        params = DiscretizationParams(t=args.t, a=0.0, n=n)
        lower, middle, upper = sandwich_check(args.z, args.t, args.beta, params,
                                              args.samples, seed=args.seed)
        print(f"{n},{lower.mean:.17g},{lower.stderr:.17g},{middle.mean:.17g},"
              f"{middle.stderr:.17g},{upper.mean:.17g},{upper.stderr:.17g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
