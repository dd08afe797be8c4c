#!/usr/bin/env python3
"""Exact E_{n;theta} C_m^k against its limit T_k(theta/m) as n grows.

    python scripts/cycle_moment_convergence.py --theta 2 --m 2 --k 2 --n-max 60
"""
import argparse
from fractions import Fraction

from permstats.exactcomb import touchard
from permstats.perm import closed_moment_C


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--theta", type=Fraction, default=Fraction(2))
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--n-max", type=int, default=40)
    args = ap.parse_args()

    limit = touchard(args.k)(args.theta / args.m)
    print(f"limit T_{args.k}({args.theta}/{args.m}) = {limit} = {float(limit):.6f}")
    print(f"{'n':>4}  {'moment':>12}  {'gap':>10}")
    for n in range(args.m * args.k, args.n_max + 1):
        value = closed_moment_C(n, args.theta, args.m, args.k)
        print(f"{n:>4}  {float(value):>12.6f}  {float(abs(value - limit)):>10.2e}")


if __name__ == "__main__":
    main()
