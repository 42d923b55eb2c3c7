"""Exact Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def as_fraction_rows(mat) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in np.asarray(mat, dtype=object).tolist()]


def row_reduce(mat) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns. Zero rows are dropped."""
    rows = [r for r in as_fraction_rows(mat) if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(mat) -> int:
    m = np.asarray(mat, dtype=object)
    if m.size == 0:
        return 0
    return len(row_reduce(m)[1])


def nullspace(mat, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : mat x = 0}, one vector per free column."""
    m = np.asarray(mat, dtype=object)
    if ncols is None:
        ncols = m.shape[1] if m.ndim == 2 else 0
    if m.size == 0:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    rows, pivots = row_reduce(m)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def column_basis(mat) -> np.ndarray:
    """Columns spanning the same space as ``mat``'s columns (object array of Fractions)."""
    m = np.asarray(mat, dtype=object)
    if m.size == 0:
        return np.zeros((m.shape[0], 0), dtype=object)
    rows, _ = row_reduce(m.T)
    if not rows:
        return np.zeros((m.shape[0], 0), dtype=object)
    return np.array(rows, dtype=object).T


def is_invertible(square) -> bool:
    m = np.asarray(square, dtype=object)
    return m.shape[0] == m.shape[1] and rank(m) == m.shape[0]


def fraction_matrix(rows: Sequence[Sequence]) -> np.ndarray:
    return np.array(as_fraction_rows(rows), dtype=object)
