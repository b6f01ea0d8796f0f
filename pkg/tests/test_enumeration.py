from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fptcc.enumeration import (BadPartition, EnumBudget, bell, enumerate_partitions,
                               enumerate_subsets, restricted_growth_strings)
from fptcc.exceptions import BudgetExceeded, ConfigError

from conftest import all_partitions

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147]


def test_bell_numbers():
    assert [bell(n) for n in range(10)] == BELL


@pytest.mark.parametrize("n", range(0, 9))
def test_partition_count_and_uniqueness(n):
    parts = [p.blocks for p in enumerate_partitions(range(n))]
    assert len(parts) == BELL[n]
    assert len(set(parts)) == len(parts)
    expected = {BadPartition(tuple(tuple(b) for b in q)).blocks for q in all_partitions(range(n))}
    assert set(parts) == expected


def test_rgs_lexicographic():
    strings = list(restricted_growth_strings(4))
    assert strings == sorted(strings)
    assert strings[0] == (0, 0, 0, 0) and strings[-1] == (0, 1, 2, 3)
    for s in strings:
        for i, x in enumerate(s):
            assert x <= max(s[:i], default=-1) + 1


def test_partitions_of_labels_not_indices():
    parts = list(enumerate_partitions({7, 3}))
    assert [p.blocks for p in parts] == [((3, 7),), ((3,), (7,))]


def test_partition_cap():
    with pytest.raises(BudgetExceeded):
        list(enumerate_partitions(range(5), max_size=4))


def test_bad_partition_validation():
    with pytest.raises(ConfigError):
        BadPartition(((1, 2), (2, 3)))
    with pytest.raises(ConfigError):
        BadPartition(((1,), ()))
    assert BadPartition(((5, 4), (1,))).blocks == ((1,), (4, 5))


def test_full_subset_enumeration():
    subs, truncated = enumerate_subsets(range(4), EnumBudget())
    subs = list(subs)
    assert not truncated
    assert len(subs) == 16 and len(set(subs)) == 16
    sizes = [len(s) for s in subs]
    assert sizes == sorted(sizes)


def test_truncated_subset_count():
    budget = EnumBudget(max_subsets=1024, max_subset_size=2)
    subs, truncated = enumerate_subsets(range(20), budget)
    subs = list(subs)
    assert truncated
    assert len(subs) == comb(20, 0) + comb(20, 1) + comb(20, 2) + 1 == 212
    assert subs[-1] == frozenset(range(20))


def test_budget_validation_and_default_cap():
    with pytest.raises(ConfigError):
        EnumBudget(max_subsets=0)
    with pytest.raises(ConfigError):
        EnumBudget(max_subset_size=0)
    assert EnumBudget().size_cap(3) == 6
    assert EnumBudget(max_subset_size=4).size_cap(3) == 4
    with pytest.raises(ConfigError):
        enumerate_subsets(range(20), EnumBudget(max_subsets=8))


@given(st.sets(st.integers(0, 40), max_size=9), st.integers(1, 600), st.integers(1, 5))
@settings(max_examples=150, deadline=None)
def test_subset_enumeration_properties(s, max_subsets, cap):
    subs, truncated = enumerate_subsets(s, EnumBudget(max_subsets, cap))
    subs = list(subs)
    assert len(subs) == len(set(subs))
    assert all(x <= s for x in subs)
    if 2 ** len(s) <= max_subsets:
        assert not truncated and len(subs) == 2 ** len(s)
    else:
        assert truncated
        assert frozenset(s) in subs
        expected = sum(comb(len(s), r) for r in range(min(cap, len(s)) + 1))
        assert len(subs) == expected + (cap < len(s))
