"""Counting m-covers of [k] and the coefficient functional gamma_m(u).

An m-cover of [k] is a multiset of nonempty subsets of [k] in which every
element lies in exactly m of the subsets.  Equivalently it is an assignment
of multiplicities l_I >= 0 to nonempty I subset of [k] such that
sum_{I containing i} l_I = m for every i.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, ResourceError
from .exactcomb import bounded_partitions

MAX_K = 12
DEFAULT_STATE_BUDGET = 10**8


@dataclass(frozen=True)
class CoverCount:
    k: int
    m: int
    value: int


def _check_km(k: int, m: int) -> None:
    if k < 1 or m < 1:
        raise DomainError(f"need k, m >= 1, got k={k}, m={m}")


def count_covers(k: int, m: int, budget: int = DEFAULT_STATE_BUDGET) -> int:
    """v_{k;m} by dynamic programming over residual demand vectors.

    Nonempty subsets are processed grouped by their smallest element.  Once
    every subset with minimum <= i is done, element i can receive no more
    coverage, so states with nonzero residual at i are dropped.
    """
    _check_km(k, m)
    if k > MAX_K or (m + 1) ** k > budget:
        raise ResourceError(f"count_covers(k={k}, m={m}) exceeds state budget {budget}")

    # residual vector packed as base-(m+1) digits, digit i = residual of element i
    base = m + 1
    place = [base**i for i in range(k)]
    states: dict[int, int] = {sum(m * p for p in place): 1}
    for low in range(k):
        for mask in range(1, 1 << k):
            if mask & -mask != 1 << low:
                continue
            members = [i for i in range(k) if mask >> i & 1]
            step = sum(place[i] for i in members)
            nxt: dict[int, int] = defaultdict(int)
            for code, ways in states.items():
                cap = min(code // place[i] % base for i in members)
                for l in range(cap + 1):
                    nxt[code - l * step] += ways
            states = nxt
        states = {c: w for c, w in states.items() if c // place[low] % base == 0}
    return states.get(0, 0)


def count_covers_bruteforce(k: int, m: int) -> int:
    """v_{k;m} by listing every multiset of nonempty subsets of [k]."""
    _check_km(k, m)
    if k > 3 or m > 5:
        raise ResourceError(f"brute force only supports k <= 3, m <= 5 (got k={k}, m={m})")
    blocks = [frozenset(s) for r in range(1, k + 1) for s in itertools.combinations(range(k), r)]
    total = 0
    # r blocks cover sum |block| = k*m element slots, so m <= r <= k*m
    for r in range(m, k * m + 1):
        for multiset in itertools.combinations_with_replacement(blocks, r):
            if sum(len(b) for b in multiset) != k * m:
                continue
            hits = [0] * k
            for b in multiset:
                for i in b:
                    hits[i] += 1
            if all(h == m for h in hits):
                total += 1
    return total


def cover_count(k: int, m: int) -> CoverCount:
    return CoverCount(k, m, count_covers(k, m))


# ---------------------------------------------------------------------------
# gamma_m(u)
# ---------------------------------------------------------------------------

def _check_u(m: int, u: Sequence[int]) -> tuple[int, ...]:
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    u = tuple(int(x) for x in u)
    if len(u) != m:
        raise DomainError(f"u must have length m={m}, got {len(u)}")
    if any(x < 0 for x in u):
        raise DomainError(f"u entries must be >= 0: {u}")
    return u


def _mul_trunc(a: list[int], b: list[int], top: int) -> list[int]:
    out = [0] * (top + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(top + 1 - i):
                out[i + j] += x * b[j]
    return out


def gamma(m: int, u: Sequence[int]) -> int:
    """[z^m] prod_{j=1}^m (1 + z^j)^{u_j}, by truncated polynomial products."""
    u = _check_u(m, u)
    poly = [1] + [0] * m
    for j, uj in enumerate(u, 1):
        factor = [0] * (m + 1)
        factor[0] = 1
        factor[j] = 1
        for _ in range(uj):
            poly = _mul_trunc(poly, factor, m)
    return poly[m]


def gamma_binomial_sum(m: int, u: Sequence[int]) -> int:
    """sum over (l_1..l_m), sum j*l_j = m, l_j <= u_j of prod_j C(u_j, l_j)."""
    u = _check_u(m, u)
    total = 0
    for ls in bounded_partitions(m, u):
        total += math.prod(math.comb(uj, l) for uj, l in zip(u, ls))
    return total
