"""Exact combinatorial kernel.

Bell numbers, Stirling numbers of both kinds, factorial functions and
Touchard polynomials, all in Python integers / ``Fraction``.  The only
inexact routine is :func:`dobinski`, which sums a transcendental series in
extended precision.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

import mpmath

from .errors import DomainError

Number = Union[int, Fraction]

_lock = threading.Lock()
_bell: list[int] = [1]
_stirling2: list[list[int]] = [[1]]
_stirling1: list[list[int]] = [[1]]


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``.  Trailing zeros are trimmed
    on construction, so equal polynomials compare equal.
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Sequence[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        # zero polynomial has degree -1
        return len(self.coeffs) - 1

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self[i] + other[i] for i in range(size)])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return self.mul_truncated(other, None)

    def mul_truncated(self, other: "Polynomial", max_degree: int | None) -> "Polynomial":
        """Product with every term above ``max_degree`` discarded."""
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        top = len(self.coeffs) + len(other.coeffs) - 2
        if max_degree is not None:
            top = min(top, max_degree)
        out = [Fraction(0)] * (top + 1)
        for i, a in enumerate(self.coeffs):
            if i > top or a == 0:
                continue
            for j, b in enumerate(other.coeffs[: top - i + 1]):
                out[i + j] += a * b
        return Polynomial(out)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Polynomial(0)"
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Polynomial(" + " + ".join(terms) + ")"


# ---------------------------------------------------------------------------
# Memoized tables
# ---------------------------------------------------------------------------

def bell(n: int) -> int:
    """Bell number B_n from B_{n+1} = sum_k C(n, k) B_k."""
    if n < 0:
        raise DomainError(f"bell: n must be >= 0, got {n}")
    with _lock:
        while len(_bell) <= n:
            r = len(_bell) - 1
            _bell.append(sum(math.comb(r, k) * _bell[k] for k in range(r + 1)))
        return _bell[n]


def _grow_stirling2(n: int) -> None:
    while len(_stirling2) <= n:
        prev = _stirling2[-1]
        r = len(prev)
        row = [0] * (r + 1)
        for k in range(1, r + 1):
            row[k] = k * (prev[k] if k < r else 0) + prev[k - 1]
        _stirling2.append(row)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind {n k}."""
    if n < 0 or k < 0:
        raise DomainError(f"stirling2: arguments must be >= 0, got ({n}, {k})")
    if k > n:
        return 0
    with _lock:
        _grow_stirling2(n)
        return _stirling2[n][k]


def stirling1_unsigned(n: int, k: int) -> int:
    """Number of permutations of [n] with exactly k cycles."""
    if not 1 <= k <= n:
        raise DomainError(f"stirling1_unsigned: need 1 <= k <= n, got ({n}, {k})")
    with _lock:
        # s(r+1, k) = r s(r, k) + s(r, k-1)
        while len(_stirling1) <= n:
            prev = _stirling1[-1]
            r = len(prev) - 1
            row = [0] * (r + 2)
            for j in range(1, r + 2):
                row[j] = r * (prev[j] if j <= r else 0) + prev[j - 1]
            _stirling1.append(row)
        return _stirling1[n][k]


# ---------------------------------------------------------------------------
# Factorial functions and Touchard polynomials
# ---------------------------------------------------------------------------

def falling_factorial(x: Number, j: int) -> Fraction:
    """x (x-1) ... (x-j+1); 1 when j == 0."""
    if j < 0:
        raise DomainError(f"falling_factorial: j must be >= 0, got {j}")
    out = Fraction(1)
    for i in range(j):
        out *= x - i
    return out


def rising_factorial(x: Number, n: int) -> Fraction:
    """x (x+1) ... (x+n-1) evaluated exactly."""
    if n < 0:
        raise DomainError(f"rising_factorial: n must be >= 0, got {n}")
    out = Fraction(1)
    for i in range(n):
        out *= x + i
    return out


def rising_factorial_poly(n: int) -> Polynomial:
    """theta^(n) as a polynomial in theta."""
    if n < 0:
        raise DomainError(f"rising_factorial_poly: n must be >= 0, got {n}")
    poly = Polynomial([1])
    for i in range(n):
        poly = poly * Polynomial([i, 1])
    return poly


def touchard(k: int) -> Polynomial:
    """T_k(x) = sum_j {k j} x^j."""
    if k < 0:
        raise DomainError(f"touchard: k must be >= 0, got {k}")
    return Polynomial([stirling2(k, j) for j in range(k + 1)])


def bounded_partitions(m: int, bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Yield (l_1, ..., l_m) with sum_j j*l_j == m and l_j <= bounds[j-1].

    Missing bounds (``len(bounds) < m``) are treated as 0.  Parts whose bound
    is 0 are never used.
    """
    if m < 0:
        raise DomainError(f"bounded_partitions: m must be >= 0, got {m}")
    caps = [bounds[j - 1] if j <= len(bounds) else 0 for j in range(1, m + 1)]
    ls = [0] * m

    # largest part first, so the remaining budget shrinks quickly
    def rec(j: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield tuple(ls)
            return
        if j == 0:
            return
        top = min(caps[j - 1], remaining // j)
        for l in range(top, -1, -1):
            ls[j - 1] = l
            yield from rec(j - 1, remaining - j * l)
        ls[j - 1] = 0

    yield from rec(m, m)


# ---------------------------------------------------------------------------
# Dobinski-type series
# ---------------------------------------------------------------------------

_DOBINSKI_PREC = 128
_DOBINSKI_MAX_TERMS = 1_000_000


def _to_mpf(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def dobinski(n: int, x: Number | float, rel_tol: float = 1e-12) -> float:
    """Evaluate T_n(x) = e^{-x} sum_k k^n x^k / k! by truncating the series.

    Summation runs at 128-bit working precision.  The loop stops at the first
    index K >= max(3n, 2*ceil(x) + 10) after which the terms have fallen for
    five consecutive steps, the last term is below ``rel_tol`` times the
    partial sum, and the geometric tail bound ``t_{K+1} / (1 - r_{K+1})``
    (valid because the term ratio decreases past the mode) is below the same
    threshold.
    """
    if rel_tol <= 0:
        raise DomainError(f"dobinski: rel_tol must be > 0, got {rel_tol}")
    if n < 0:
        raise DomainError(f"dobinski: n must be >= 0, got {n}")
    if x <= 0:
        raise DomainError(f"dobinski: x must be > 0, got {x}")

    with mpmath.workprec(_DOBINSKI_PREC):
        xm = _to_mpf(x)
        k_min = max(3 * n, 2 * math.ceil(x) + 10)
        total = mpmath.mpf(0)
        term = mpmath.mpf(1) if n == 0 else mpmath.mpf(0)  # k = 0
        total += term
        falling = 0
        prev = term
        for k in range(1, _DOBINSKI_MAX_TERMS):
            term = mpmath.power(k, n) * mpmath.power(xm, k) / mpmath.factorial(k)
            total += term
            falling = falling + 1 if term < prev else 0
            prev = term
            if k < k_min or falling < 5:
                continue
            threshold = rel_tol * total
            if term >= threshold:
                continue
            ratio = xm * mpmath.power(mpmath.mpf(k + 2) / (k + 1), n) / (k + 2)
            nxt = term * xm * mpmath.power(mpmath.mpf(k + 1) / k, n) / (k + 1)
            if ratio < 1 and nxt / (1 - ratio) < threshold:
                break
        else:  # pragma: no cover - guards against non-termination
            raise DomainError("dobinski: series did not reach tolerance")
        return float(mpmath.exp(-xm) * total)
