"""Permutations of [n], cycle statistics and exact finite-n moments.

Permutations use 1-based one-line notation: ``Permutation((2, 1, 3))`` maps
1 -> 2, 2 -> 1, 3 -> 3.  Moments are exact ``Fraction`` values obtained by
weighting every permutation of S_n (n <= 10) by its Ewens probability.
"""
from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, ResourceError
from .exactcomb import Number, bounded_partitions, rising_factorial, stirling2

MAX_ENUM_N = 10
DEFAULT_SUBSET_BUDGET = 10**7


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if n < 1:
            raise DomainError("a permutation needs n >= 1")
        if sorted(images) != list(range(1, n + 1)):
            raise DomainError(f"not a bijection of [1..{n}]: {images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int | None = None) -> "Permutation":
        """Build from disjoint cycles.

        Without ``n`` every element of [1..max] must appear in some cycle;
        with ``n`` unlisted elements are fixed points.
        """
        cycles = [tuple(c) for c in cycles if len(c)]
        seen = [x for c in cycles for x in c]
        if len(seen) != len(set(seen)):
            raise DomainError(f"cycles are not disjoint: {cycles}")
        if any(x < 1 for x in seen):
            raise DomainError("cycle elements must be >= 1")
        top = max(seen, default=0)
        if n is None:
            n = top
            if set(seen) != set(range(1, n + 1)):
                missing = sorted(set(range(1, n + 1)) - set(seen))
                raise DomainError(f"elements {missing} missing; pass n to treat them as fixed points")
        elif top > n:
            raise DomainError(f"element {top} exceeds n={n}")
        images = list(range(1, n + 1))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse_cycles(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse cycle notation such as ``"(3 7 9)(2 4)(1 6)(5)(8)"``.

        Elements inside a cycle may be separated by whitespace or commas.
        """
        text = text.strip()
        if not re.fullmatch(r"(\s*\(\s*\d+(\s*[,\s]\s*\d+)*\s*\)\s*)*", text):
            raise DomainError(f"malformed cycle notation: {text!r}")
        cycles = [
            [int(tok) for tok in re.split(r"[,\s]+", body.strip())]
            for body in re.findall(r"\(([^)]*)\)", text)
        ]
        if not cycles and n is None:
            raise DomainError("empty cycle notation needs n")
        return cls.from_cycles(cycles, n)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * (self.n + 1)
        out = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.images[i - 1]
            out.append(tuple(cyc))
        return out

    def to_cycle_string(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())


@dataclass(frozen=True)
class CycleType:
    """counts[j-1] is the number of j-cycles; length is n."""

    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if not counts:
            raise DomainError("cycle type needs n >= 1")
        if any(c < 0 for c in counts):
            raise DomainError("cycle counts must be nonnegative")
        if sum(j * c for j, c in enumerate(counts, 1)) != len(counts):
            raise DomainError(f"sum j*c_j must equal n={len(counts)}: {counts}")

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def num_cycles(self) -> int:
        return sum(self.counts)

    def __getitem__(self, m: int) -> int:
        """Number of m-cycles (1-based; 0 for m > n)."""
        if m < 1:
            raise DomainError(f"cycle length must be >= 1, got {m}")
        return self.counts[m - 1] if m <= self.n else 0


def cycle_type(p: Permutation) -> CycleType:
    counts = [0] * p.n
    for c in p.cycles():
        counts[len(c) - 1] += 1
    return CycleType(tuple(counts))


# ---------------------------------------------------------------------------
# Fixed sets
# ---------------------------------------------------------------------------

def fixed_set_count_direct(p: Permutation, m: int, budget: int = DEFAULT_SUBSET_BUDGET) -> int:
    """Count m-subsets A of [n] with p(A) == A by trying every subset."""
    if not 1 <= m <= p.n:
        raise DomainError(f"need 1 <= m <= n={p.n}, got m={m}")
    if math.comb(p.n, m) > budget:
        raise ResourceError(
            f"C({p.n},{m}) subsets exceed budget {budget}; use fixed_set_count on the cycle type"
        )
    imgs = p.images
    count = 0
    for subset in itertools.combinations(range(1, p.n + 1), m):
        s = set(subset)
        if all(imgs[a - 1] in s for a in subset):
            count += 1
    return count


def fixed_set_count(ct: CycleType, m: int) -> int:
    """Number of m-sets fixed by any permutation of cycle type ``ct``.

    A fixed set is a union of whole cycles, so this is the sum over
    (l_1..l_m) with sum j*l_j = m of prod_j C(c_j, l_j).
    """
    if not 1 <= m <= ct.n:
        raise DomainError(f"need 1 <= m <= n={ct.n}, got m={m}")
    total = 0
    for ls in bounded_partitions(m, ct.counts[:m]):
        term = 1
        for j, l in enumerate(ls, 1):
            if l:
                term *= math.comb(ct.counts[j - 1], l)
        total += term
    return total


# ---------------------------------------------------------------------------
# Enumeration and Ewens measure
# ---------------------------------------------------------------------------

def _check_enum(n: int) -> None:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n > MAX_ENUM_N:
        raise ResourceError(f"enumerating S_{n} exceeds the n <= {MAX_ENUM_N} budget; use Monte Carlo")


def enumerate_sn(n: int) -> Iterator[Permutation]:
    """All n! permutations in lexicographic order of one-line notation."""
    _check_enum(n)
    for imgs in itertools.permutations(range(1, n + 1)):
        yield Permutation(imgs)


@lru_cache(maxsize=None)
def cycle_type_tally(n: int) -> dict[CycleType, int]:
    """How many permutations of S_n have each cycle type, by enumeration."""
    _check_enum(n)
    tally: Counter[CycleType] = Counter()
    # raw tuples here: constructing Permutation objects dominates at n = 10
    for imgs in itertools.permutations(range(n)):
        counts = [0] * n
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = imgs[i]
                length += 1
            counts[length - 1] += 1
        tally[CycleType(tuple(counts))] += 1
    return dict(tally)


def _check_theta(theta: Number) -> Fraction:
    theta = Fraction(theta)
    if theta <= 0:
        raise DomainError(f"theta must be > 0, got {theta}")
    return theta


def ewens_weight_of_type(ct: CycleType, theta: Number) -> Fraction:
    theta = _check_theta(theta)
    return theta**ct.num_cycles / rising_factorial(theta, ct.n)


def ewens_weight(p: Permutation, theta: Number) -> Fraction:
    """P_{n;theta}({p}) = theta^{#cycles} / theta^{(n)}."""
    return ewens_weight_of_type(cycle_type(p), theta)


def exact_moment_C(n: int, theta: Number, specs: Sequence[tuple[int, int]]) -> Fraction:
    """E_{n;theta} prod_i C_{m_i}^{k_i}, exactly, by weighting all of S_n."""
    _check_enum(n)
    theta = _check_theta(theta)
    for m, k in specs:
        if m < 1 or k < 0:
            raise DomainError(f"bad moment spec (m={m}, k={k})")
    total = Fraction(0)
    for ct, count in cycle_type_tally(n).items():
        value = 1
        for m, k in specs:
            value *= ct[m] ** k
        if value:
            total += count * value * ewens_weight_of_type(ct, theta)
    return total


def closed_moment_C(n: int, theta: Number, m: int, k: int) -> Fraction:
    """E_{n;theta} C_m^k from the indicator-decomposition count, valid for n >= m*k.

    Sum over l of {k l} * (ways to pick l ordered disjoint m-sets) *
    ((m-1)!)^l * theta^l * theta^{(n-lm)} / theta^{(n)}.
    """
    theta = _check_theta(theta)
    if m < 1 or k < 1:
        raise DomainError(f"need m, k >= 1, got m={m}, k={k}")
    if n < m * k:
        raise DomainError(f"closed form needs n >= m*k ({n} < {m * k})")
    norm = rising_factorial(theta, n)
    total = Fraction(0)
    for l in range(1, k + 1):
        placements = Fraction(math.factorial(n), math.factorial(m) ** l * math.factorial(n - l * m))
        total += (
            stirling2(k, l)
            * placements
            * math.factorial(m - 1) ** l
            * theta**l
            * rising_factorial(theta, n - l * m)
            / norm
        )
    return total


def exact_moment_E(n: int, m: int, k: int) -> Fraction:
    """E_n (E^{(n)}_m)^k under the uniform measure, by enumeration."""
    _check_enum(n)
    if not 1 <= m <= n or k < 0:
        raise DomainError(f"need 1 <= m <= n and k >= 0, got n={n}, m={m}, k={k}")
    total = 0
    for ct, count in cycle_type_tally(n).items():
        total += count * fixed_set_count(ct, m) ** k
    return Fraction(total, math.factorial(n))
