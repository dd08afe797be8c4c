import itertools
import math
from fractions import Fraction

import pytest

from oracles import poisson_pmf
from permstats.covers import count_covers, gamma
from permstats.errors import DomainError
from permstats.limitdist import (
    dist_E,
    poisson_cap,
    prob_nonzero,
    vm_closed,
    vm_eval,
    vm_series_coeffs,
)


def test_e1_is_poisson_one():
    pmf = dist_E(1, 1e-8).pmf()
    for j in range(8):
        assert pmf[j] == pytest.approx(poisson_pmf(1.0, j), rel=1e-12)


def test_mass_contract():
    for m in range(1, 7):
        d = dist_E(m, 1e-3, moments=0)
        assert 1 - d.mass_captured <= 1e-3
        assert all(p > 0 for _, p in d.support)
        assert math.fsum(p for _, p in d.support) == pytest.approx(d.mass_captured, abs=1e-12)


def test_dist_e2_against_direct_double_sum():
    # E_2 = C(Z_1, 2) + Z_{1/2}; sum the joint pmf directly
    pmf = dist_E(2, 1e-10).pmf()
    direct = {}
    for u1, u2 in itertools.product(range(25), range(25)):
        v = math.comb(u1, 2) + u2
        direct[v] = direct.get(v, 0.0) + poisson_pmf(1.0, u1) * poisson_pmf(0.5, u2)
    for v in range(12):
        assert pmf.get(v, 0.0) == pytest.approx(direct.get(v, 0.0), abs=1e-12)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_moments_are_cover_counts(m):
    d = dist_E(m, 1e-8)
    for k in (1, 2):
        assert d.moment(k) == pytest.approx(count_covers(k, m), abs=1e-6)
    assert d.variance == pytest.approx(m, abs=1e-6)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_third_moment_with_wider_box(m):
    d = dist_E(m, 1e-8, moments=3)
    assert d.moment(3) == pytest.approx(count_covers(3, m), rel=1e-6)


def test_poisson_cap():
    u = poisson_cap(1.0, 1e-6)
    tail = lambda c: 1 - sum(poisson_pmf(1.0, r) for r in range(c + 1))
    assert tail(u) < 1e-6 <= tail(u - 1)


@pytest.mark.parametrize("m", range(1, 9))
def test_vm_at_zero(m):
    v = vm_eval(m, 0.0, 1e-6)
    assert abs(v.value - 1) <= 1e-6
    assert v.truncation_bound >= abs(v.value - 1)


@pytest.mark.parametrize("x", [-1.0, -0.5, -0.1, 0.0])
def test_vm_closed_forms(x):
    assert vm_eval(2, x, 1e-10).value == pytest.approx(vm_closed(2, x), abs=1e-9)
    assert vm_eval(3, x, 1e-9).value == pytest.approx(vm_closed(3, x), abs=1e-8)


def test_vm_closed_at_zero():
    assert vm_closed(2, 0.0) == pytest.approx(1, abs=1e-14)
    assert vm_closed(3, 0.0) == pytest.approx(1, abs=1e-14)


def test_vm_m1_is_poisson_mgf():
    for x in (-2.0, 0.3, 1.0):
        v = vm_eval(1, x, 1e-10)
        exact = math.exp(math.exp(x) - 1)
        assert abs(v.value - exact) <= v.truncation_bound


def test_positive_x_rejected_when_divergent():
    # terms e^{x C(r,2)} / r! of the m = 2 closed form eventually increase
    x = 0.2
    logs = [math.comb(r, 2) * x - math.lgamma(r + 1) for r in range(60)]
    assert logs[-1] > logs[20] > logs[14]
    with pytest.raises(DomainError):
        vm_eval(2, x)
    with pytest.raises(DomainError):
        vm_closed(3, 0.5)
    with pytest.raises(DomainError):
        vm_eval(1, 1.5)


def test_vm_closed_domain():
    with pytest.raises(DomainError):
        vm_closed(4, -0.1)


@pytest.mark.parametrize("m, x", [(1, 0.05), (2, -0.05), (3, -0.02)])
def test_egf_against_cover_series(m, x):
    # for m >= 2 the cover series only expands E exp(x E_m) asymptotically as
    # x -> 0-; error is about the first omitted term, ~3e-5 for m = 3 at -0.05
    series = sum(float(c) * x**k for k, c in enumerate(vm_series_coeffs(m, 8), 1))
    assert vm_eval(m, x, 1e-10).value == pytest.approx(1 + series, abs=1e-6)


def test_series_coefficients():
    assert vm_series_coeffs(1, 4) == [1, 1, Fraction(5, 6), Fraction(15, 24)]
    assert vm_series_coeffs(2, 2) == [1, Fraction(3, 2)]
    assert vm_series_coeffs(3, 1) == [1]


def test_prob_nonzero():
    lo, hi = prob_nonzero(1, 1e-6)
    assert lo <= 1 - math.exp(-1) <= hi
    # E_2 = 0 iff Z_1 <= 1 and Z_{1/2} = 0
    p0 = math.exp(-1.5) * 2
    lo, hi = prob_nonzero(2, 0.01)
    assert lo <= 1 - p0 <= hi
    for m in (3, 5, 8):
        lo, hi = prob_nonzero(m, 0.01)
        assert 0 <= hi - lo <= 0.01


def test_prob_nonzero_decreasing_small_m():
    vals = [prob_nonzero(m, 1e-6)[0] for m in range(1, 7)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_zero_vector_weight_in_p0():
    # P(E_m = 0) >= e^{-H_m}, the weight of u = 0
    for m in range(1, 6):
        h = sum(1 / j for j in range(1, m + 1))
        assert dist_E(m, 1e-6, moments=0).pmf()[0] >= math.exp(-h)


def test_epsilon_domain():
    with pytest.raises(DomainError):
        dist_E(2, 0.5)
    with pytest.raises(DomainError):
        dist_E(13, 1e-3)
    with pytest.raises(DomainError):
        prob_nonzero(2, 0)


def test_gamma_support_consistency():
    # every value in the law is gamma of some small u
    support = {v for v, _ in dist_E(3, 1e-4, moments=0).support}
    reachable = {gamma(3, u) for u in itertools.product(range(12), range(8), range(6))}
    assert support <= reachable
