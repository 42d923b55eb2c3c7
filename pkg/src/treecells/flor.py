"""Normal form of nonnegative (quasi-)idempotent matrices, with a checkable certificate.

A nonnegative idempotent E becomes, after a simultaneous permutation of rows
and columns, ::

    [ 0  AJ  AJB ]
    [ 0  J   JB  ]
    [ 0  0   0   ]

where J is block diagonal with nonnegative rank-one idempotent blocks. A
matrix with M @ M = lam * M and lam > 0 is handled through E = M / lam.
All arithmetic is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class NotIdempotent(ValueError):
    pass


def as_matrix(mat) -> np.ndarray:
    """Square object array of Fractions; raises on negative entries or bad shape."""
    m = np.array([[Fraction(x) for x in row] for row in np.asarray(mat, dtype=object).tolist()],
                 dtype=object)
    if m.size == 0:
        m = m.reshape(0, 0)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if any(x < 0 for x in m.flat):
        raise ValueError("matrix has a negative entry")
    return m


def quasi_idempotent_scalar(mat) -> Fraction | None:
    """lam > 0 with M^2 = lam M, or None (also None for the zero matrix)."""
    m = as_matrix(mat)
    nz = [(i, j) for i, j in itertools.product(range(m.shape[0]), repeat=2) if m[i, j] != 0]
    if not nz:
        return None
    sq = m.dot(m)
    i, j = nz[0]
    lam = sq[i, j] / m[i, j]
    if lam <= 0 or not np.array_equal(sq, lam * m):
        return None
    return lam


@dataclass
class FlorForm:
    scale: Fraction
    permutation: list[int]
    first: list[int]
    core: list[int]
    last: list[int]
    core_classes: list[list[int]]
    AJ: np.ndarray
    J: np.ndarray
    JB: np.ndarray
    AJB: np.ndarray

    def blocks_absent(self) -> bool:
        """True when there is nothing outside the core except zero rows and columns."""
        return not self.first and not any(x != 0 for x in self.JB.flat)

    def as_dict(self) -> dict:
        def rows(m):
            return [[str(x) for x in row] for row in m.tolist()]

        return {
            "scale": str(self.scale),
            "permutation": [i + 1 for i in self.permutation],
            "first": [i + 1 for i in self.first],
            "core": [i + 1 for i in self.core],
            "last": [i + 1 for i in self.last],
            "core_classes": [[i + 1 for i in c] for c in self.core_classes],
            "AJ": rows(self.AJ),
            "J": rows(self.J),
            "JB": rows(self.JB),
            "AJB": rows(self.AJB),
        }


def _components(core: list[int], e: np.ndarray) -> list[list[int]]:
    remaining = set(core)
    classes = []
    for start in core:
        if start not in remaining:
            continue
        comp = {start}
        stack = [start]
        remaining.discard(start)
        while stack:
            a = stack.pop()
            for b in list(remaining):
                if e[a, b] != 0 or e[b, a] != 0:
                    remaining.discard(b)
                    comp.add(b)
                    stack.append(b)
        classes.append(sorted(comp))
    return classes


def flor_decompose(mat) -> FlorForm:
    """Permutation and blocks for a nonnegative quasi-idempotent matrix.

    The zero matrix is treated as idempotent with empty core: everything goes
    to the last block. Indices whose row and column both vanish also go last.
    """
    m = as_matrix(mat)
    k = m.shape[0]
    lam = quasi_idempotent_scalar(m)
    if lam is None:
        if any(x != 0 for x in m.flat):
            raise NotIdempotent("not quasi-idempotent: no lam > 0 with M^2 = lam M")
        lam = Fraction(1)
    e = m / lam
    core = [i for i in range(k) if e[i, i] > 0]
    first, last = [], []
    for i in range(k):
        if i in core:
            continue
        zero_row = all(x == 0 for x in e[i, :])
        zero_col = all(x == 0 for x in e[:, i])
        if zero_row:
            last.append(i)
        elif zero_col:
            first.append(i)
        else:
            raise NotIdempotent(f"index {i + 1} is outside the core but has a nonzero row and column")
    classes = _components(core, e)
    core_order = [i for c in classes for i in c]
    form = FlorForm(
        scale=lam,
        permutation=first + core_order + last,
        first=first,
        core=core_order,
        last=last,
        core_classes=classes,
        AJ=e[np.ix_(first, core_order)],
        J=e[np.ix_(core_order, core_order)],
        JB=e[np.ix_(core_order, last)],
        AJB=e[np.ix_(first, last)],
    )
    if not verify_flor(m, form):
        raise NotIdempotent("block identities fail; the matrix is not quasi-idempotent")
    return form


def _block(e: np.ndarray, rows, cols) -> np.ndarray:
    return e[np.ix_(list(rows), list(cols))]


def _is_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in a.flat)


def _rank_one_idempotent(block: np.ndarray) -> bool:
    n = block.shape[0]
    if n == 0 or sum(block[i, i] for i in range(n)) != 1:
        return False
    for (a, b), (c, d) in itertools.product(itertools.combinations(range(n), 2), repeat=2):
        if block[a, c] * block[b, d] != block[a, d] * block[b, c]:
            return False
    return np.array_equal(block.dot(block), block)


def verify_flor(mat, form: FlorForm) -> bool:
    """Re-derive every claim of ``form`` from ``mat``; never trusts the decomposer."""
    try:
        m = as_matrix(mat)
    except ValueError:
        return False
    k = m.shape[0]
    if form.scale <= 0:
        return False
    sq = m.dot(m)
    if not np.array_equal(sq, form.scale * m):
        return False
    e = m / form.scale
    first, core, last = list(form.first), list(form.core), list(form.last)
    if sorted(first + core + last) != list(range(k)):
        return False
    if list(form.permutation) != first + core + last:
        return False
    if sorted(i for c in form.core_classes for i in c) != sorted(core):
        return False
    if [i for c in form.core_classes for i in c] != core:
        return False
    # the permuted pattern: first columns and last rows vanish, J sits on the core
    if not _is_zero(e[:, first]) or not _is_zero(e[last, :]):
        return False
    if any(e[i, i] <= 0 for i in core):
        return False
    for c1, c2 in itertools.permutations(form.core_classes, 2):
        if not _is_zero(_block(e, c1, c2)):
            return False
    for c in form.core_classes:
        if not _rank_one_idempotent(_block(e, c, c)):
            return False
    aj, j, jb, ajb = (_block(e, first, core), _block(e, core, core),
                      _block(e, core, last), _block(e, first, last))
    for got, want in ((form.AJ, aj), (form.J, j), (form.JB, jb), (form.AJB, ajb)):
        if np.asarray(got).shape != want.shape or not np.array_equal(np.asarray(got, dtype=object), want):
            return False
    if not np.array_equal(aj.dot(j), aj) or not np.array_equal(j.dot(jb), jb):
        return False
    if not np.array_equal(aj.dot(jb), ajb):
        return False
    # the trace of an idempotent is its rank, one per rank-one block
    return sum(e[i, i] for i in core) == len(form.core_classes)


def zero_row_col_symmetric(mat) -> bool:
    """Every zero row has a zero column at the same index and vice versa."""
    m = np.asarray(mat, dtype=object)
    for i in range(m.shape[0]):
        if all(x == 0 for x in m[i, :]) != all(x == 0 for x in m[:, i]):
            return False
    return True


def parse_matrix_file(text: str) -> np.ndarray:
    """First line: size k; then k rows of k rationals such as ``2`` or ``1/2``."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty matrix file")
    try:
        k = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the matrix size, got {lines[0]!r}") from None
    if len(lines) - 1 != k:
        raise ValueError(f"expected {k} rows, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != k:
            raise ValueError(f"expected {k} entries in row {ln!r}")
        try:
            rows.append([Fraction(t) for t in toks])
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad rational in row {ln!r}") from None
    return as_matrix(rows) if k else np.zeros((0, 0), dtype=object)


def block_display(mat, form: FlorForm) -> str:
    """The normalised matrix in the permuted order with block separators."""
    e = as_matrix(mat) / form.scale
    order = form.permutation
    cuts = {len(form.first), len(form.first) + len(form.core)}
    cells = [[str(e[i, j]) for j in order] for i in order]
    width = max((len(c) for row in cells for c in row), default=1)
    lines = []
    for r, row in enumerate(cells):
        if r in cuts and 0 < r < len(order):
            lines.append("-" * len(lines[-1]) if lines else "")
        parts = []
        for c, x in enumerate(row):
            if c in cuts and 0 < c < len(order):
                parts.append("|")
            parts.append(x.rjust(width))
        lines.append(" ".join(parts))
    header = f"(1/{form.scale}) M, order {[i + 1 for i in order]}"
    return "\n".join([header] + lines)
