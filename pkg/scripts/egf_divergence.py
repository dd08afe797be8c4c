#!/usr/bin/env python3
"""Log-magnitude of the terms e^{x C(r,2)} / r! in the m = 2 closed form.

For x <= 0 they decay factorially; for any x > 0 they eventually grow
without bound, so E exp(x E_2) is infinite.

    python scripts/egf_divergence.py --x -0.5 0.2 0.3 0.5
"""
import argparse
import math


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x", type=float, nargs="+", default=[-0.5, 0.2, 0.3, 0.5])
    ap.add_argument("--r", type=int, nargs="+", default=[5, 10, 15, 20, 30, 40])
    args = ap.parse_args()

    print("x      " + "".join(f"r={r:<8}" for r in args.r))
    for x in args.x:
        logs = [math.comb(r, 2) * x - math.lgamma(r + 1) for r in args.r]
        print(f"{x:<6} " + "".join(f"{v:<10.2f}" for v in logs))


if __name__ == "__main__":
    main()
