"""Split Grothendieck level of the 2-category of projective functors on A-mod.

A 1-morphism is recorded by multiplicities: ``id_mult`` copies of the identity
plus ``f_mult[i-1][j-1]`` copies of F_ij = A e_i (x) e_j A. Composition is
F_ij o F_kl = dim(e_j A e_k) F_il, so on multiplicity tables it is f @ C @ g
with C the Cartan matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra

IDENTITY = "1"


def f_label(i: int, j: int) -> str:
    return f"F({i},{j})"


@dataclass(frozen=True)
class OneMorphism:
    id_mult: int
    f_mult: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        f = tuple(tuple(int(x) for x in row) for row in np.asarray(self.f_mult).tolist())
        object.__setattr__(self, "f_mult", f)
        if self.id_mult < 0 or any(x < 0 for row in f for x in row):
            raise ValueError("multiplicities must be nonnegative")

    @classmethod
    def identity(cls, n: int) -> "OneMorphism":
        return cls(1, np.zeros((n, n), dtype=int))

    @classmethod
    def zero(cls, n: int) -> "OneMorphism":
        return cls(0, np.zeros((n, n), dtype=int))

    @classmethod
    def F(cls, n: int, i: int, j: int) -> "OneMorphism":
        f = np.zeros((n, n), dtype=int)
        f[i - 1, j - 1] = 1
        return cls(0, f)

    @property
    def n(self) -> int:
        return len(self.f_mult)

    def f_array(self) -> np.ndarray:
        return np.array(self.f_mult, dtype=np.int64).reshape(self.n, self.n)

    def __add__(self, other: "OneMorphism") -> "OneMorphism":
        return OneMorphism(self.id_mult + other.id_mult, self.f_array() + other.f_array())

    def __rmul__(self, k: int) -> "OneMorphism":
        return OneMorphism(k * self.id_mult, k * self.f_array())

    def summands(self) -> dict[str, int]:
        out = {IDENTITY: self.id_mult} if self.id_mult else {}
        for i, j in itertools.product(range(self.n), repeat=2):
            if self.f_mult[i][j]:
                out[f_label(i + 1, j + 1)] = self.f_mult[i][j]
        return out


def compose(alg: Algebra, f: OneMorphism, g: OneMorphism) -> OneMorphism:
    """f o g (apply g first)."""
    c = alg.cartan_matrix()
    ff, gg = f.f_array(), g.f_array()
    return OneMorphism(f.id_mult * g.id_mult, f.id_mult * gg + g.id_mult * ff + ff @ c @ gg)


@dataclass
class CellStructure:
    left_cells: list[list[str]]
    right_cells: list[list[str]]
    two_sided_cells: list[list[str]]

    def as_dict(self) -> dict:
        return {
            "left_cells": self.left_cells,
            "right_cells": self.right_cells,
            "two_sided_cells": self.two_sided_cells,
        }


def _indecomposables(n: int) -> list[tuple[str, OneMorphism]]:
    out = [(IDENTITY, OneMorphism.identity(n))]
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        out.append((f_label(i, j), OneMorphism.F(n, i, j)))
    return out


def _classes(labels: list[str], leq: dict[tuple[str, str], bool]) -> list[list[str]]:
    order = {lab: k for k, lab in enumerate(labels)}
    seen: set[str] = set()
    classes = []
    for a in labels:
        if a in seen:
            continue
        cls = [b for b in labels if leq[a, b] and leq[b, a]]
        seen.update(cls)
        classes.append(sorted(cls, key=order.get))
    return classes


def one_step_orders(alg: Algebra) -> dict[str, dict[tuple[str, str], bool]]:
    """H <= G in the left/right/two-sided order: H is a summand of K o G, G o K, K o G o K'.

    K and K' run over the indecomposables, identity included, so a single
    composition step is enough. Multiplicities are nonnegative, so the summands
    of K o (G o K') are those of K o X for the summands X of G o K'.
    """
    inds = _indecomposables(alg.n)
    labels = [lab for lab, _ in inds]
    left, right = {}, {}
    for g_lab, g in inds:
        lsum: set[str] = set()
        rsum: set[str] = set()
        for _, k in inds:
            lsum.update(compose(alg, k, g).summands())
            rsum.update(compose(alg, g, k).summands())
        for h_lab in labels:
            left[h_lab, g_lab] = h_lab in lsum
            right[h_lab, g_lab] = h_lab in rsum
    two = {
        (h, g): any(left[h, x] and right[x, g] for x in labels)
        for h in labels
        for g in labels
    }
    return {"left": left, "right": right, "two_sided": two}


def cells(alg: Algebra) -> CellStructure:
    labels = [lab for lab, _ in _indecomposables(alg.n)]
    orders = one_step_orders(alg)
    return CellStructure(
        _classes(labels, orders["left"]),
        _classes(labels, orders["right"]),
        _classes(labels, orders["two_sided"]),
    )


def cell_rep_matrices(alg: Algebra, j: int = 1) -> dict[tuple[int, int], np.ndarray]:
    """Matrices [F_ik] of the cell 2-representation for the left cell L_j.

    Every such cell 2-representation is the defining action on A-proj, so
    entry (s, t) is delta(s, i) * dim(e_k A e_t) whatever ``j`` is; ``j`` only
    fixes which projective labels which object.
    """
    n = alg.n
    if not 1 <= j <= n:
        raise ValueError(f"left cell index {j} is not in 1..{n}")
    c = alg.cartan_matrix()
    out = {}
    for i, k in itertools.product(range(1, n + 1), repeat=2):
        mat = np.zeros((n, n), dtype=np.int64)
        mat[i - 1, :] = c[k - 1, :]
        out[i, k] = mat
    return out


def matrix_of(alg: Algebra, h: OneMorphism, rep) -> np.ndarray:
    """[H] for a candidate 2-representation: entry (s, v) is the multiplicity of Q_s in H Q_v.

    F_ij acts as the sum of G_st with multiplicity m[i][j][s][t], and
    G_st Q_v = Q_s ** dim(eps_t B eps_v).
    """
    cb = np.asarray(rep.cartan_b, dtype=np.int64)
    m = np.asarray(rep.m, dtype=np.int64)
    out = h.id_mult * np.eye(rep.r, dtype=np.int64)
    f = h.f_array()
    for i, j in zip(*np.nonzero(f)):
        out = out + f[i, j] * (m[i, j] @ cb)
    return out
