#!/usr/bin/env python3
"""Monte Carlo cycle-count moments at large n against their Poisson limits.

    python scripts/monte_carlo_limits.py --n 1000 --theta 1.5 --replicates 50000
"""
import argparse
from fractions import Fraction

from permstats.ewens import SamplerConfig, mc_moment
from permstats.exactcomb import touchard


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--theta", type=float, default=1.0)
    ap.add_argument("--replicates", type=int, default=50_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cfg = SamplerConfig(args.n, args.theta, args.seed, args.replicates)
    theta = Fraction(args.theta).limit_denominator(10**6)
    print(f"{'spec':<14} {'estimate':>10} {'stderr':>9} {'limit':>10} {'z':>6}")
    for specs in ([(1, 1)], [(1, 2)], [(2, 1)], [(2, 2)], [(3, 2)], [(1, 1), (2, 1)]):
        est, se = mc_moment(cfg, specs)
        limit = 1.0
        for m, k in specs:
            limit *= float(touchard(k)(theta / m))
        print(f"{str(specs):<14} {est:>10.4f} {se:>9.4f} {limit:>10.4f} {(est - limit) / se:>6.2f}")


if __name__ == "__main__":
    main()
