from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqhodge import exact

small_matrices = st.integers(1, 5).flatmap(
    lambda rows: st.integers(1, 5).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-9, 9), min_size=cols, max_size=cols),
            min_size=rows, max_size=rows,
        )
    )
)


def test_rank_int_known():
    assert exact.rank_int([[1, 0], [0, 1]]) == 2
    assert exact.rank_int([[1, 2], [2, 4]]) == 1
    assert exact.rank_int([[0, 0], [0, 0]]) == 0
    assert exact.rank_int([]) == 0


def test_rank_int_large_entries():
    # fraction-free elimination must not lose exactness on big pivots
    big = 10**30
    assert exact.rank_int([[big, 1], [1, big]]) == 2
    assert exact.rank_int([[big, big], [big, big]]) == 1


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_rank_matches_numpy(rows):
    a = np.array(rows, dtype=float)
    expected = np.linalg.matrix_rank(a, tol=1e-9)
    assert exact.rank_int(rows) == expected


def test_rref_pivots_identity_block():
    rows = [[Fraction(2), Fraction(4)], [Fraction(1), Fraction(3)]]
    reduced, pivots = exact.rref(rows)
    assert pivots == [0, 1]
    assert reduced[0] == [Fraction(1), Fraction(0)]
    assert reduced[1] == [Fraction(0), Fraction(1)]


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_nullspace_vectors_in_kernel(rows):
    ncols = len(rows[0])
    basis, free = exact.nullspace(rows, ncols=ncols)
    assert len(basis) == ncols - exact.rank_int(rows)
    for vec, fc in zip(basis, free):
        assert vec[fc] == 1
        for row in rows:
            assert sum(Fraction(a) * x for a, x in zip(row, vec)) == 0


def test_nullspace_free_column_echelon():
    # the j-th basis vector is 1 at the j-th free column and 0 at the others
    rows = [[1, 2, 3, 4]]
    basis, free = exact.nullspace(rows, ncols=4)
    for i, vec in enumerate(basis):
        for j, fc in enumerate(free):
            assert vec[fc] == (1 if i == j else 0)


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_column_space_rank_and_echelon(rows):
    basis, lead = exact.column_space(rows)
    assert len(basis) == exact.rank_int(rows)
    for i, vec in enumerate(basis):
        for j, lr in enumerate(lead):
            assert vec[lr] == (1 if i == j else 0)


def test_column_space_spans():
    rows = [[1, 1], [0, 1], [1, 2]]
    basis, lead = exact.column_space(rows)
    # every original column is a combination of the echelon basis,
    # read off from the lead coordinates
    for j in range(2):
        col = [Fraction(r[j]) for r in rows]
        coeffs = [col[lr] for lr in lead]
        rebuilt = [
            sum(c * vec[i] for c, vec in zip(coeffs, basis))
            for i in range(3)
        ]
        assert rebuilt == col
