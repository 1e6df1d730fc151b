from itertools import product

import pytest
from hypothesis import given, strategies as st

from oracles import dominates_bruteforce
from wittgrass.partitions import (METHODS, PartitionType, all_verdicts, complement, dominates,
                                  minus_one, partitions_in_box, partitions_of, row_counts, rows)

P = PartitionType


def test_normalization_and_parse():
    assert P([1, 0, 2]) == P([2, 1])
    assert P.parse("2,1").parts == (2, 1)
    assert P.parse("()") == P()
    assert str(P()) == "()" and str(P([3, 1, 1])) == "3,1,1"
    with pytest.raises(ValueError):
        P([-1])


def test_row_counts_examples():
    lam = P([2, 1])
    assert [row_counts(lam, i) for i in range(3)] == [2, 1, 0]
    assert all(row_counts(P(), i) == 0 for i in range(4))
    assert row_counts(P([3, 3, 1]), 2) == 2
    assert rows(P([2, 1])) == (2, 1)


def test_dominance_examples():
    assert dominates(P([2]), P([1, 1]), "epsilon") == (True, (1,))
    assert dominates(P([1, 1]), P([2])) is False
    ok, witness = dominates(P([3, 1, 1]), P([2, 2, 1]), "epsilon")
    assert ok and witness[0] == 1 and not any(witness[1:])
    assert dominates(P([2]), P([1])) is False  # different totals


def test_minus_one_examples():
    assert minus_one(P([2, 1])) == P([1])
    assert minus_one(P()) == P()
    assert minus_one(P([3, 3])) == P([2, 2])


def _all_up_to(total):
    return [lam for t in range(total + 1) for lam in partitions_of(t)]


def test_partition_generation_counts():
    # partition numbers p(0..8)
    assert [len(partitions_of(t)) for t in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert len(partitions_in_box(3, 2)) == 10


def test_four_methods_agree_with_bruteforce():
    parts = _all_up_to(6)
    for lam, mu in product(parts, repeat=2):
        verdicts, witness = all_verdicts(lam, mu)
        truth = dominates_bruteforce(lam, mu)
        assert set(verdicts.values()) == {truth}, (lam, mu, verdicts)
        if truth:
            # witness reproduces lam - mu
            size = len(witness) + 1
            vec = [0] * size
            for j, c in enumerate(witness):
                assert c >= 0
                vec[j] += c
                vec[j + 1] -= c
            assert vec == [lam.part(j) - mu.part(j) for j in range(1, size + 1)]


def test_minus_one_shifts_row_counts():
    for lam in _all_up_to(8):
        for i in range(9):
            assert row_counts(minus_one(lam), i) == row_counts(lam, i + 1)


partitions = st.lists(st.integers(0, 5), max_size=5).map(P)


@given(partitions)
def test_row_counts_sum_and_monotone(lam):
    counts = [row_counts(lam, i) for i in range(lam.largest() + 2)]
    assert sum(counts) == lam.total
    assert all(a >= b for a, b in zip(counts, counts[1:]))


@given(partitions, st.integers(5, 7))
def test_complement_is_involution(lam, c):
    n = 5
    assert complement(complement(lam, n, c), n, c) == lam
    assert complement(lam, n, c).total == n * c - lam.total


@given(partitions, partitions)
def test_methods_agree(lam, mu):
    verdicts, _ = all_verdicts(lam, mu)
    assert len(set(verdicts.values())) == 1
    assert set(verdicts) == set(METHODS)


@given(partitions, partitions)
def test_dominance_reverses_under_transpose(lam, mu):
    def transpose(x):
        return P(row_counts(x, i) for i in range(x.largest()))
    assert dominates(lam, mu) == dominates(transpose(mu), transpose(lam))
