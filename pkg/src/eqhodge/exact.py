"""Exact linear algebra over the integers and rationals.

These routines back every "oracle" computation in the package: Betti
numbers, homology bases and induced-map traces are computed without any
floating point, so the spectral pipeline can be checked against them.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _normalize_int_row(row):
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return [x // g for x in row]
    return row


def rank_int(matrix) -> int:
    """Rank of an integer matrix by fraction-free Gaussian elimination.

    Rows are combined with integer cross-multiplication and re-normalized
    by their gcd, so every intermediate value stays an exact integer.
    """
    rows = [_normalize_int_row([int(x) for x in r]) for r in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while col < ncols and rank < len(rows):
        piv = None
        best = None
        for i in range(rank, len(rows)):
            v = rows[i][col]
            if v != 0 and (best is None or abs(v) < best):
                piv, best = i, abs(v)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        p = prow[col]
        for i in range(rank + 1, len(rows)):
            v = rows[i][col]
            if v == 0:
                continue
            r = rows[i]
            rows[i] = _normalize_int_row(
                [p * a - v * b for a, b in zip(r, prow)]
            )
        rank += 1
        col += 1
    return rank


def rref(matrix):
    """Reduced row echelon form over the rationals.

    Returns ``(rows, pivots)`` where ``rows`` is a list of Fraction rows
    (zero rows dropped) and ``pivots`` the pivot column of each row.
    """
    rows = [[Fraction(int(x)) if not isinstance(x, Fraction) else x
             for x in r] for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[col]
        prow = [x * inv for x in prow]
        rows[rank] = prow
        for i in range(len(rows)):
            if i == rank:
                continue
            v = rows[i][col]
            if v != 0:
                r = rows[i]
                rows[i] = [a - v * b for a, b in zip(r, prow)]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def nullspace(matrix, ncols=None):
    """Rational nullspace basis in free-column echelon form.

    Returns ``(basis, free_cols)``: ``basis[j]`` is a Fraction vector with
    ``basis[j][free_cols[j]] == 1`` and zero at every other free column.
    ``ncols`` must be given when ``matrix`` has no rows.
    """
    rows = list(matrix)
    if rows:
        ncols = len(rows[0])
    if ncols is None:
        raise ValueError("ncols required for an empty matrix")
    red, pivots = rref(rows)
    pivset = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in zip(red, pivots):
            vec[pc] = -r[fc]
        basis.append(vec)
    return basis, free_cols


def column_space(matrix):
    """Basis of the column space, echelon-structured.

    Returns ``(basis, lead_rows)`` with ``basis[i][lead_rows[i]] == 1`` and
    ``basis[i][lead_rows[j]] == 0`` for ``j != i`` (RREF of the transpose).
    """
    rows = list(matrix)
    if not rows:
        return [], []
    nrows = len(rows)
    ncols = len(rows[0])
    transposed = [[rows[i][j] for i in range(nrows)] for j in range(ncols)]
    red, pivots = rref(transposed)
    return red, pivots
