"""Verification suites run by ``permstats verify``.

Each suite appends checks to a Report.  Exact identities are compared with
zero tolerance; Monte Carlo checks use a z-score bound.  The suites are
sized to finish in seconds, and the full-scale versions live in
tests/test_acceptance.py.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction

from . import covers, ewens, exactcomb, limitdist, perm


def identities(r, seed: int = 0) -> None:
    mismatches = 0
    for n in range(0, 11):
        for x in range(0, 11):
            lhs = Fraction(x) ** n
            rhs = sum(exactcomb.stirling2(n, j) * exactcomb.falling_factorial(x, j) for j in range(n + 1))
            mismatches += lhs != rhs
    r.check("x^n = sum {n j} (x)_j for n, x <= 10", mismatches == 0, mismatches, 0)
    for n in range(1, 11):
        for theta in (Fraction(1), Fraction(2), Fraction(5, 3)):
            lhs = sum(exactcomb.stirling1_unsigned(n, k) * theta**k for k in range(1, n + 1))
            rhs = exactcomb.rising_factorial(theta, n)
            r.check(f"sum s(n,k) theta^k = theta^(n), n={n}, theta={theta}", lhs == rhs, lhs, rhs)
    for k in range(16):
        r.check(f"T_{k}(1) = B_{k}", exactcomb.touchard(k)(1) == exactcomb.bell(k), exactcomb.touchard(k)(1), exactcomb.bell(k))
    partial = math.fsum(exactcomb.bell(n) * 0.5**n / math.factorial(n) for n in range(26))
    target = math.exp(math.exp(0.5) - 1)
    r.check("Bell EGF partial sum at x=0.5", abs(partial - target) < 1e-10, partial, target, 1e-10)
    for n in range(0, 16, 3):
        d = exactcomb.dobinski(n, 1, 1e-10)
        b = exactcomb.bell(n)
        r.check(f"Dobinski n={n}", abs(d - b) <= 1e-9 * b, d, b, 1e-9)


def cycle_moments(r, seed: int = 0) -> None:
    for m in range(1, 7):
        for k in range(1, 7 // m + 1):
            for n in range(m * k, 7):
                lhs = perm.exact_moment_C(n, 1, [(m, k)])
                rhs = exactcomb.touchard(k)(Fraction(1, m))
                r.check(f"E_n C_{m}^{k} = T_{k}(1/{m}) at n={n}", lhs == rhs, lhs, rhs)
    for theta in (Fraction(1, 2), Fraction(2)):
        for m, k in ((1, 2), (2, 2), (3, 1)):
            for n in range(m * k, 7):
                lhs = perm.closed_moment_C(n, theta, m, k)
                rhs = perm.exact_moment_C(n, theta, [(m, k)])
                r.check(f"closed = enumerated, n={n} theta={theta} m={m} k={k}", lhs == rhs, lhs, rhs)
    for theta, specs in ((1.0, [(2, 2)]), (2.0, [(1, 1)]), (1.0, [(1, 1), (2, 1)])):
        cfg = ewens.SamplerConfig(300, theta, seed, 20000)
        est, se = ewens.mc_moment(cfg, specs)
        limit = math.prod(float(exactcomb.touchard(k)(Fraction(theta) / m)) for m, k in specs)
        r.check(f"MC moment {specs} theta={theta}", abs(est - limit) <= 4 * se, est, limit, 4 * se)


def cover_moments(r, seed: int = 0) -> None:
    for m, k in ((2, 1), (2, 2), (3, 1), (3, 2)):
        for n in range(k * m, 8):
            lhs = perm.exact_moment_E(n, m, k)
            rhs = covers.count_covers(k, m)
            r.check(f"E_n (E_{m})^{k} = v_{{{k};{m}}} at n={n}", lhs == rhs, lhs, rhs)
    for m in range(1, 5):
        d = limitdist.dist_E(m, 1e-8)
        r.check(f"E E_{m} = 1", abs(d.mean - 1) < 1e-6, d.mean, 1, 1e-6)
        r.check(f"Var E_{m} = {m}", abs(d.variance - m) < 1e-6, d.variance, m, 1e-6)
    for k in range(1, 4):
        for m in range(1, 5):
            a, b = covers.count_covers(k, m), covers.count_covers_bruteforce(k, m)
            r.check(f"cover DP = brute force k={k} m={m}", a == b, a, b)


def limit_law(r, seed: int = 0) -> None:
    rng = random.Random(seed)
    bad = []
    for _ in range(200):
        m = rng.randint(1, 8)
        u = [rng.randint(0, 5) for _ in range(m)]
        if covers.gamma(m, u) != covers.gamma_binomial_sum(m, u):
            bad.append((m, u))
    r.check("gamma = binomial sum on 200 random inputs", not bad, len(bad), 0)
    for x in (-1.0, -0.5, 0.0):
        for m, eps, tol in ((2, 1e-10, 1e-9), (3, 1e-9, 1e-8)):
            v = limitdist.vm_eval(m, x, eps).value
            c = limitdist.vm_closed(m, x)
            r.check(f"V_{m}({x}) box sum = closed form", abs(v - c) < tol, v, c, tol)
    for m in (1, 2, 3):
        coeffs = limitdist.vm_series_coeffs(m, 3)
        r.check(f"v_{{1;{m}}} = 1, v_{{2;{m}}} = {m + 1}", coeffs[:2] == [1, Fraction(m + 1, 2)], coeffs[:2], [1, Fraction(m + 1, 2)])


SUITES = {
    "identities": identities,
    "theoremC": cycle_moments,
    "theorem1": cover_moments,
    "theorem2": limit_law,
}
