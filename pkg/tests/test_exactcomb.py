import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import count_partitions, cycle_lengths
from permstats.errors import DomainError
from permstats.exactcomb import (
    Polynomial,
    bell,
    bounded_partitions,
    dobinski,
    falling_factorial,
    rising_factorial,
    rising_factorial_poly,
    stirling1_unsigned,
    stirling2,
    touchard,
)


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (5, 52)])
def test_bell_examples(n, expected):
    assert bell(n) == expected


@pytest.mark.parametrize("n", range(0, 9))
def test_bell_matches_partition_enumeration(n):
    assert bell(n) == count_partitions(n)


def test_bell_large_exact():
    # B_20 exceeds 2^45; recurrence must stay in exact integers
    assert bell(20) == 51724158235372
    assert bell(30) > 2**53


def test_bell_increasing():
    assert all(bell(n + 1) > bell(n) for n in range(1, 40))


@pytest.mark.parametrize("n, k, expected", [(0, 0, 1), (4, 2, 7), (3, 5, 0), (5, 0, 0)])
def test_stirling2_examples(n, k, expected):
    assert stirling2(n, k) == expected


@pytest.mark.parametrize("n", range(0, 8))
def test_stirling2_matches_enumeration(n):
    for k in range(0, n + 2):
        assert stirling2(n, k) == count_partitions(n, k)


def test_stirling2_support():
    for n in range(0, 12):
        for k in range(0, 14):
            assert (stirling2(n, k) > 0) == ((1 <= k <= n) or n == k == 0)


@pytest.mark.parametrize("n, k, expected", [(3, 3, 1), (3, 1, 2), (3, 2, 3)])
def test_stirling1_examples(n, k, expected):
    assert stirling1_unsigned(n, k) == expected


@pytest.mark.parametrize("n", range(1, 8))
def test_stirling1_counts_permutations_by_cycles(n):
    tally = [0] * (n + 1)
    for images in itertools.permutations(range(n)):
        tally[len(cycle_lengths(images))] += 1
    assert [stirling1_unsigned(n, k) for k in range(1, n + 1)] == tally[1:]


@pytest.mark.parametrize("n, k", [(3, 0), (3, 4), (0, 0)])
def test_stirling1_domain(n, k):
    with pytest.raises(DomainError):
        stirling1_unsigned(n, k)


def test_falling_factorial_examples():
    assert falling_factorial(5, 0) == 1
    assert falling_factorial(4, 2) == 12
    assert falling_factorial(3, 5) == 0
    assert falling_factorial(Fraction(1, 2), 2) == Fraction(-1, 4)


@given(st.integers(0, 10), st.integers(0, 10))
def test_power_as_falling_factorials(n, x):
    assert x**n == sum(stirling2(n, j) * falling_factorial(x, j) for j in range(n + 1))


def test_rising_factorial_poly_examples():
    assert rising_factorial_poly(0) == Polynomial([1])
    assert rising_factorial_poly(2) == Polynomial([0, 1, 1])
    assert rising_factorial_poly(3) == Polynomial([0, 2, 3, 1])


@pytest.mark.parametrize("n", range(1, 13))
def test_rising_factorial_coefficients_are_stirling1(n):
    poly = rising_factorial_poly(n)
    assert poly.degree == n
    assert poly[0] == 0
    assert [poly[k] for k in range(1, n + 1)] == [stirling1_unsigned(n, k) for k in range(1, n + 1)]


@given(st.integers(0, 10), st.fractions(min_value=0, max_value=20, max_denominator=7))
def test_rising_factorial_poly_evaluates(n, theta):
    assert rising_factorial_poly(n)(theta) == rising_factorial(theta, n)


def test_touchard_examples():
    assert touchard(0) == Polynomial([1])
    assert touchard(1) == Polynomial([0, 1])
    assert touchard(3) == Polynomial([0, 1, 3, 1])


@pytest.mark.parametrize("k", range(0, 16))
def test_touchard_at_one_is_bell(k):
    assert touchard(k)(1) == bell(k)


def test_polynomial_trimming_and_degree():
    assert Polynomial([0, 0]).degree == -1
    assert Polynomial([1, 2, 0, 0]) == Polynomial([1, 2])
    assert (Polynomial([1, 1]) * Polynomial([1, 1])).coeffs == (1, 2, 1)
    assert Polynomial([1, 1]).mul_truncated(Polynomial([1, 1]), 1) == Polynomial([1, 2])
    assert Polynomial([1]) + Polynomial([0, 3]) == Polynomial([1, 3])


@given(
    st.lists(st.integers(-5, 5), max_size=5),
    st.lists(st.integers(-5, 5), max_size=5),
    st.fractions(min_value=-3, max_value=3, max_denominator=5),
)
def test_polynomial_ring_homomorphism(a, b, x):
    p, q = Polynomial(a), Polynomial(b)
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)


def test_bounded_partitions():
    assert sorted(bounded_partitions(4, [4, 2, 1, 1])) == sorted(
        [(4, 0, 0, 0), (2, 1, 0, 0), (0, 2, 0, 0), (1, 0, 1, 0), (0, 0, 0, 1)]
    )
    assert list(bounded_partitions(1, [0])) == []
    assert list(bounded_partitions(0, [])) == [()]


def test_bell_egf_partial_sum():
    partial = math.fsum(bell(n) * 0.5**n / math.factorial(n) for n in range(26))
    assert abs(partial - math.exp(math.exp(0.5) - 1)) < 1e-10


@pytest.mark.parametrize(
    "n, x, tol, expected",
    [(0, 1, 1e-12, 1), (5, 1, 1e-10, 52), (3, 2, 1e-10, 22)],
)
def test_dobinski_examples(n, x, tol, expected):
    assert dobinski(n, x, tol) == pytest.approx(expected, rel=10 * tol)


@pytest.mark.parametrize("n", range(0, 16))
def test_dobinski_recovers_bell(n):
    assert dobinski(n, 1, 1e-12) == pytest.approx(bell(n), rel=1e-11)


def test_dobinski_large_x():
    # mode of k^n x^k / k! sits near k = x; stopping rule must wait past it
    assert dobinski(4, 30, 1e-12) == pytest.approx(float(touchard(4)(30)), rel=1e-11)


def test_dobinski_domain():
    with pytest.raises(DomainError):
        dobinski(3, 1, 0)
    with pytest.raises(DomainError):
        dobinski(3, -1, 1e-6)
