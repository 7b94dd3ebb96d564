"""
Testes da contagem e enumeração das distribuições.
"""

import math

import pytest

from src.models.placement import Distribution
from src.models.search import CeConfig
from src.utils.combinatorics import complexity_ratio, enumerate_distributions, solution_count
from src.utils.errors import CombinatoricsOverflowError


def test_twenty_buses_five_units():
    assert solution_count(20, 5) == 42504
    assert sum(1 for _ in enumerate_distributions(20, 5)) == 42504


def test_no_units_gives_single_empty_distribution():
    listed = list(enumerate_distributions(5, 0))
    assert listed == [Distribution.empty(5)]


def test_canonical_order_small_case():
    listed = [d.counts for d in enumerate_distributions(3, 2)]
    assert listed == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def test_order_matches_sort_key():
    listed = list(enumerate_distributions(5, 3))
    assert listed == sorted(listed, key=lambda d: d.sort_key())


@pytest.mark.parametrize("n", range(1, 9))
def test_enumeration_is_complete(n):
    for n_s in range(0, 5):
        listed = list(enumerate_distributions(n, n_s))
        assert len(listed) == math.comb(n + n_s - 1, n_s)
        assert len({d.counts for d in listed}) == len(listed)
        assert all(d.total_units == n_s for d in listed)


@pytest.mark.parametrize("n_s,n_iter,samples,expected", [
    (5, 20, 150, 14.17),
    (8, 30, 250, 296.01),
    (10, 30, 250, 2670.67),
    (10, 35, 300, 1907.62),
])
def test_complexity_ratio(n_s, n_iter, samples, expected):
    ratio = complexity_ratio(20, n_s, CeConfig(n_iter=n_iter, samples=samples))
    assert round(ratio, 2) == expected


def test_ratio_equal_to_one():
    assert complexity_ratio(3, 2, CeConfig(n_iter=2, samples=3)) == 1.0


def test_overflow_is_checked():
    with pytest.raises(CombinatoricsOverflowError):
        solution_count(200, 100)
    with pytest.raises(CombinatoricsOverflowError):
        solution_count(10, 3, limit=100)


def test_invalid_sizes():
    with pytest.raises(ValueError):
        solution_count(0, 2)
