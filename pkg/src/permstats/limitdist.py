"""Law of the limiting fixed-set count E_m and its exponential moments.

E_m = gamma_m(Z_1, Z_{1/2}, ..., Z_{1/m}) for independent Z_{1/j} ~ Poisson(1/j).
Its law is computed over the box prod_j [0, U_j], where U_j is the
smallest cap with E[(1 + Z_{1/j})^{q ceil(m/j)}; Z_{1/j} > U_j] < eps / (2m).
gamma_m has degree at most ceil(m/j) in u_j, so with q = 2 (the default
``moments``) the omitted region is small for the first two moments as well
as for the mass; q = 0 bounds the mass alone and is much cheaper for large m.  The box is swept
one coordinate at a time with states keyed by the truncated polynomial
prod_{i<=j} (1 + z^i)^{u_i} mod z^{m+1}.  Distinct u vectors with the same
state are merged.  After coordinate j, coefficients at degrees m-j..m-1 can
no longer reach degree m, since every remaining part exceeds j, so they are
zeroed before merging.

For m >= 2, E e^{x E_m} is infinite when x > 0, because the Poisson
weights 1/r! cannot offset e^{x C(r,2)}.  The evaluators therefore accept
only x <= 0 when m >= 2.  E_1 is Poisson(1), so its moment generating
function is finite everywhere.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .covers import count_covers
from .errors import DomainError, ResourceError

MAX_M = 12
STATE_BUDGET = 2_000_000
X_MAX_M1 = 1.0


@dataclass(frozen=True)
class TruncatedDistribution:
    m: int
    support: tuple[tuple[int, float], ...]
    mass_captured: float
    epsilon: float

    def moment(self, k: int) -> float:
        return math.fsum(p * v**k for v, p in self.support)

    @property
    def mean(self) -> float:
        return self.moment(1)

    @property
    def variance(self) -> float:
        return self.moment(2) - self.moment(1) ** 2

    def pmf(self) -> dict[int, float]:
        return dict(self.support)


@dataclass(frozen=True)
class EgfValue:
    x: float
    value: float
    truncation_bound: float
    m: int = field(default=0)


def _check_eps(epsilon: float) -> None:
    if not 0 < epsilon <= 0.1:
        raise DomainError(f"epsilon must lie in (0, 0.1], got {epsilon}")


def _poisson_pmf(lam: float, r: int) -> float:
    return math.exp(-lam + r * math.log(lam) - math.lgamma(r + 1))


def poisson_cap(lam: float, tail: float, power: int = 0) -> int:
    """Smallest U with E[(1 + Z)^power; Z > U] < tail for Z ~ Poisson(lam)."""
    u = 0
    while True:
        # direct tail sum; 1 - cdf would lose precision near 1
        upper = math.fsum((1 + r) ** power * _poisson_pmf(lam, r) for r in range(u + 1, u + 200))
        if upper < tail:
            return u
        u += 1


@lru_cache(maxsize=64)
def _box_law(m: int, epsilon: float, moments: int) -> tuple[tuple[tuple[int, float], ...], float]:
    tail = epsilon / (2 * m)
    caps = [poisson_cap(1.0 / j, tail, moments * -(-m // j)) for j in range(1, m + 1)]
    mass = 1.0
    states: dict[tuple[int, ...], float] = {(1,) + (0,) * m: 1.0}
    for j, cap in enumerate(caps, 1):
        lam = 1.0 / j
        weights = [_poisson_pmf(lam, u) for u in range(cap + 1)]
        mass *= math.fsum(weights)
        nxt: dict[tuple[int, ...], list[float]] = defaultdict(list)
        for poly, w in states.items():
            cur = list(poly)
            for u, wu in enumerate(weights):
                if u:
                    # multiply by (1 + z^j), truncated at degree m
                    for d in range(m, j - 1, -1):
                        cur[d] += cur[d - j]
                key = cur[: max(m - j, 0)] + [0] * min(j, m) + cur[m:]
                nxt[tuple(key)].append(w * wu)
        states = {p: math.fsum(ws) for p, ws in nxt.items()}
        if len(states) > STATE_BUDGET:
            raise ResourceError(f"dist_E(m={m}) exceeds {STATE_BUDGET} states")
    law: dict[int, list[float]] = defaultdict(list)
    for poly, w in states.items():
        law[poly[m]].append(w)
    support = tuple(sorted((v, math.fsum(ws)) for v, ws in law.items()))
    return support, mass


def dist_E(m: int, epsilon: float = 1e-8, moments: int = 2) -> TruncatedDistribution:
    """Law of E_m with at least 1 - epsilon of the mass captured.

    ``moments`` sets how far past the mass criterion the box is widened so
    that moments up to that order are also accurate; see the module notes.
    """
    _check_eps(epsilon)
    if not 1 <= m <= MAX_M:
        raise DomainError(f"m must lie in [1, {MAX_M}], got {m}")
    if moments < 0:
        raise DomainError(f"moments must be >= 0, got {moments}")
    support, mass = _box_law(m, float(epsilon), moments)
    return TruncatedDistribution(m, tuple((v, p) for v, p in support if p > 0), mass, epsilon)


def x_max(m: int) -> float:
    return X_MAX_M1 if m == 1 else 0.0


def vm_eval(m: int, x: float, epsilon: float = 1e-8) -> EgfValue:
    """E e^{x E_m} summed over the truncated box, with a certified tail bound.

    For x <= 0 every omitted term lies in (0, 1], so the omitted mass bounds
    the error.  For m == 1 and 0 < x <= 1 the omitted Poisson tail is
    e^{e^x - 1} P(Poisson(e^x) > U_1).
    """
    _check_eps(epsilon)
    if x > x_max(m):
        raise DomainError(
            f"E exp(x E_{m}) is only certifiable for x <= {x_max(m)}"
            + (" (it diverges for x > 0 when m >= 2)" if m >= 2 else "")
        )
    dist = dist_E(m, epsilon, moments=0 if x <= 0 else 2)
    value = math.fsum(p * math.exp(x * v) for v, p in dist.support)
    if x <= 0:
        bound = max(0.0, 1.0 - dist.mass_captured)
    else:
        top = max(v for v, _ in dist.support)
        lam = math.exp(x)
        bound = math.exp(lam - 1) * math.fsum(_poisson_pmf(lam, r) for r in range(top + 1, top + 200))
    # rounding in the float sums
    bound += 64 * math.ulp(1.0) * max(1.0, value)
    return EgfValue(x, value, bound, m)


def _closed_terms(m: int, x: float, r: int) -> float:
    if m == 2:
        return math.exp(math.comb(r, 2) * x - math.lgamma(r + 1))
    return math.exp(math.comb(r, 3) * x + 0.5 * math.exp(r * x) - math.lgamma(r + 1))


def vm_closed(m: int, x: float, rel_tol: float = 1e-15) -> float:
    """Closed-form E e^{x E_m} for m = 2, 3, where the u_{j>=2} sums collapse.

    The r-series is cut once the factorial-dominance bound on the remainder
    is below ``rel_tol`` times the partial sum.  For x <= 0 each term is at
    most c / r! with c = 1 (m=2) or e^{1/2} (m=3), so the remainder after R
    terms is at most 2c / (R+1)!.
    """
    if m not in (2, 3):
        raise DomainError(f"closed form only for m in (2, 3), got {m}")
    if x > 0:
        raise DomainError(f"E exp(x E_{m}) diverges for x > 0 (got x={x})")
    c = 1.0 if m == 2 else math.exp(0.5)
    prefactor = -1.5 + 0.5 * math.exp(x) if m == 2 else -11 / 6 + math.exp(x) / 3
    terms = []
    r = 0
    while True:
        terms.append(_closed_terms(m, x, r))
        partial = math.fsum(terms)
        remainder = 2 * c * math.exp(-math.lgamma(r + 2))
        if remainder < rel_tol * partial * 1e-3 or r > 400:
            break
        r += 1
    return math.exp(prefactor) * partial


def vm_series_coeffs(m: int, K: int) -> list[Fraction]:
    """v_{k;m} / k! for k = 1..K."""
    if K < 1:
        raise DomainError(f"K must be >= 1, got {K}")
    return [Fraction(count_covers(k, m), math.factorial(k)) for k in range(1, K + 1)]


def prob_nonzero(m: int, epsilon: float = 1e-8) -> tuple[float, float]:
    """Interval (lower, upper) containing P(E_m >= 1); width <= epsilon."""
    dist = dist_E(m, epsilon, moments=0)
    lower = math.fsum(p for v, p in dist.support if v >= 1)
    upper = min(1.0, lower + (1.0 - dist.mass_captured))
    return lower, upper
