import itertools
import math

import pytest
from hypothesis import given, strategies as st

from permstats.covers import (
    count_covers,
    count_covers_bruteforce,
    cover_count,
    gamma,
    gamma_binomial_sum,
)
from permstats.errors import DomainError, ResourceError
from permstats.exactcomb import bell


@pytest.mark.parametrize("k, m, expected", [(1, 7, 1), (2, 5, 6), (4, 1, 15)])
def test_count_covers_examples(k, m, expected):
    assert count_covers(k, m) == expected


@pytest.mark.parametrize("k, m, expected", [(1, 1, 1), (2, 2, 3), (3, 1, 5)])
def test_bruteforce_examples(k, m, expected):
    assert count_covers_bruteforce(k, m) == expected


def test_bruteforce_by_hand_2_covers_of_2():
    # {1,2}{1,2} ; {1,2}{1}{2} ; {1}{1}{2}{2}
    assert count_covers_bruteforce(2, 2) == 3


@pytest.mark.parametrize("k", range(1, 11))
def test_one_covers_are_partitions(k):
    assert count_covers(k, 1) == bell(k)


@pytest.mark.parametrize("m", range(1, 21))
def test_small_k_closed_forms(m):
    assert count_covers(1, m) == 1
    assert count_covers(2, m) == m + 1


@pytest.mark.parametrize("k, m", list(itertools.product(range(1, 4), range(1, 6))))
def test_dp_matches_bruteforce(k, m):
    assert count_covers(k, m) == count_covers_bruteforce(k, m)


def test_known_two_cover_counts():
    # 2-covers of a k-set: 1, 3, 16, 139, 1750, 29388
    assert [count_covers(k, 2) for k in range(1, 7)] == [1, 3, 16, 139, 1750, 29388]


def test_cover_count_record():
    c = cover_count(3, 2)
    assert (c.k, c.m, c.value) == (3, 2, 16)


def test_count_covers_budget():
    with pytest.raises(ResourceError):
        count_covers(12, 9)
    with pytest.raises(ResourceError):
        count_covers(5, 5, budget=100)
    with pytest.raises(ResourceError):
        count_covers_bruteforce(4, 1)
    with pytest.raises(DomainError):
        count_covers(0, 1)


@given(st.integers(0, 12))
def test_gamma_m1(u1):
    assert gamma(1, [u1]) == u1


def test_gamma_low_order_closed_forms():
    for u in itertools.product(range(5), repeat=2):
        assert gamma(2, u) == math.comb(u[0], 2) + u[1]
    for u in itertools.product(range(5), repeat=3):
        assert gamma(3, u) == math.comb(u[0], 3) + u[0] * u[1] + u[2]


def test_gamma_binomial_sum_examples():
    assert gamma_binomial_sum(2, [3, 1]) == 4
    assert gamma_binomial_sum(1, [0]) == 0
    assert gamma_binomial_sum(4, [2, 2, 1, 1]) == gamma(4, [2, 2, 1, 1])


@st.composite
def u_vectors(draw, max_m=8, max_entry=5):
    m = draw(st.integers(1, max_m))
    return m, draw(st.lists(st.integers(0, max_entry), min_size=m, max_size=m))


@given(u_vectors())
def test_gamma_identity(mu):
    m, u = mu
    assert gamma(m, u) == gamma_binomial_sum(m, u)


@given(u_vectors())
def test_gamma_vanishes_without_enough_cycles(mu):
    m, u = mu
    if sum(j * uj for j, uj in enumerate(u, 1)) < m:
        assert gamma(m, u) == 0
    assert gamma(m, [0] * m) == 0


def test_gamma_length_mismatch():
    with pytest.raises(DomainError):
        gamma(3, [1, 2])
    with pytest.raises(DomainError):
        gamma_binomial_sum(2, [1, 2, 3])
