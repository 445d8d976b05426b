"""Partition enumeration and dimension formula tests.

Oracles: a standalone partition counter for cardinalities, and a
semistandard-tableau counter for Schur module dimensions (weight
enumeration, no hook lengths involved).
"""

from math import factorial

import pytest

from semisimple.partitions import (
    Partition,
    dim_schur,
    dim_sym_irrep,
    enumerate_in_box,
)
from semisimple.scalars import DomainError


def count_partitions(n, max_part=None):
    """Independent recursive partition counter."""
    if max_part is None:
        max_part = n
    if n == 0:
        return 1
    if max_part == 0:
        return 0
    return sum(count_partitions(n - k, min(k, n - k)) for k in range(1, max_part + 1))


def count_ssyt(shape, d):
    """Semistandard tableaux of the given shape with entries in 1..d.

    Brute-force backtracking cell by cell: rows weakly increase, columns
    strictly increase.  This is the weight-enumeration dimension of the
    Schur module.
    """
    cells = [(i, j) for i, part in enumerate(shape) for j in range(part)]

    def fill(idx, values):
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        lo = 1
        if j > 0:
            lo = max(lo, values[(i, j - 1)])
        if i > 0:
            lo = max(lo, values[(i - 1, j)] + 1)
        total = 0
        for v in range(lo, d + 1):
            values[(i, j)] = v
            total += fill(idx + 1, values)
        values.pop((i, j), None)
        return total

    return fill(0, {})


def test_partition_validation():
    with pytest.raises(DomainError):
        Partition((1, 2))
    with pytest.raises(DomainError):
        Partition((2, 0))


def test_conjugate_involution():
    for n in range(9):
        for lam in enumerate_in_box(n, n, n):
            assert lam.conjugate().conjugate() == lam


def test_enumerate_in_box_examples():
    assert [lam.parts for lam in enumerate_in_box(2, 1, 2)] == [(2,)]
    assert [lam.parts for lam in enumerate_in_box(4, 2, 2)] == [(2, 2)]
    assert [lam.parts for lam in enumerate_in_box(4, 2, 3)] == [(2, 2), (3, 1)]


def test_enumerate_in_box_is_lexicographic_and_unique():
    for n in range(1, 10):
        out = [lam.parts for lam in enumerate_in_box(n, n, n)]
        assert out == sorted(out)
        assert len(out) == len(set(out))


def test_enumerate_counts_match_partition_function():
    for n in range(21):
        assert len(enumerate_in_box(n, n, n)) == count_partitions(n)


def test_enumerate_box_constraints_hold():
    for n in range(1, 11):
        for rows in range(5):
            for cols in range(5):
                for lam in enumerate_in_box(n, rows, cols):
                    assert lam.size == n
                    assert len(lam.parts) <= rows
                    assert all(part <= cols for part in lam.parts)


def test_dim_sym_irrep_examples():
    assert dim_sym_irrep(Partition((6,))) == 1
    assert dim_sym_irrep(Partition((2, 1))) == 2  # hooks 3, 1, 1
    assert sum(dim_sym_irrep(lam) ** 2 for lam in enumerate_in_box(4, 4, 4)) == 24


def test_dim_sym_irrep_sum_of_squares():
    for n in range(1, 13):
        total = sum(dim_sym_irrep(lam) ** 2 for lam in enumerate_in_box(n, n, n))
        assert total == factorial(n)


def test_dim_schur_examples():
    for d in range(1, 6):
        assert dim_schur(Partition((1,)), d) == d
    assert dim_schur(Partition((1, 1, 1)), 2) == 0
    assert dim_schur(Partition((2, 1)), 3) == 8


def test_dim_schur_vs_tableau_oracle():
    for n in range(1, 7):
        for d in range(1, 5):
            for lam in enumerate_in_box(n, n, n):
                assert dim_schur(lam, d) == count_ssyt(lam.parts, d)


def test_weighted_dimension_identity():
    # sum over partitions with at most d rows of dim(irrep) * dim(Schur) = d^N
    for d in range(1, 5):
        for n in range(1, 11):
            total = sum(
                dim_sym_irrep(lam) * dim_schur(lam, d)
                for lam in enumerate_in_box(n, d, n)
            )
            assert total == d**n
