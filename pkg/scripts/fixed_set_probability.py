#!/usr/bin/env python3
"""Certified intervals for P(E_m >= 1) in the n -> infinity limit, small m.

    python scripts/fixed_set_probability.py --m-max 10 --eps 1e-6
"""
import argparse
import time

from permstats.limitdist import prob_nonzero


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-max", type=int, default=10)
    ap.add_argument("--eps", type=float, default=1e-6)
    args = ap.parse_args()

    print(f"{'m':>3}  {'lower':>10}  {'upper':>10}  {'secs':>6}")
    for m in range(1, args.m_max + 1):
        t0 = time.perf_counter()
        lo, hi = prob_nonzero(m, args.eps)
        print(f"{m:>3}  {lo:>10.7f}  {hi:>10.7f}  {time.perf_counter() - t0:>6.2f}")


if __name__ == "__main__":
    main()
