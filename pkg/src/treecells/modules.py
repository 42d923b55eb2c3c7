"""Finite dimensional A-modules: projectives, injectives, simples and their invariants.

A module is a graded vector space (every basis vector sits at a vertex) with
one matrix per arrow. Matrices act on column vectors.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .algebra import Algebra, Arr, BasisElement


class Inconclusive(RuntimeError):
    """The isomorphism search found no witness although the cheap invariants agree."""


@dataclass
class Module:
    algebra: Algebra
    labels: tuple[str, ...]
    grading: tuple[int, ...]
    action: dict[tuple[int, int], np.ndarray]
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.grading)

    @property
    def dim_vector(self) -> tuple[int, ...]:
        counts = Counter(self.grading)
        return tuple(counts.get(v, 0) for v in range(1, self.algebra.n + 1))

    def word_action(self, word) -> np.ndarray:
        """Matrix of a path given in traversal order."""
        out = np.eye(self.dim, dtype=object)
        for a in word:
            out = self.action[tuple(a)].astype(object) @ out
        return out

    def respects_grading(self) -> bool:
        g = np.array(self.grading)
        for (i, j), mat in self.action.items():
            rows, cols = np.nonzero(mat)
            if np.any(g[cols] != i) or np.any(g[rows] != j):
                return False
        return True

    def satisfies_relations(self) -> bool:
        zero = np.zeros((self.dim, self.dim), dtype=object)
        for lhs, rhs in self.algebra.relations():
            other = zero if rhs is None else self.word_action(rhs)
            if not np.array_equal(self.word_action(lhs), other):
                return False
        return True

    def __repr__(self):
        return f"Module({self.name or '?'}, dim={self.dim}, dim_vector={self.dim_vector})"


@dataclass
class LoewyReport:
    layers: list[Counter]
    socle: Counter
    top: Counter
    loewy_length: int

    def as_dict(self) -> dict:
        def ms(c):
            return {str(k): c[k] for k in sorted(c)}

        return {
            "loewy_length": self.loewy_length,
            "layers": [ms(c) for c in self.layers],
            "top": ms(self.top),
            "socle": ms(self.socle),
        }


@dataclass
class HomSpace:
    dim: int
    basis: list[np.ndarray] = field(default_factory=list)


def _arrow_matrices(alg: Algebra, basis: list[BasisElement], mult) -> dict[tuple[int, int], np.ndarray]:
    pos = {b: k for k, b in enumerate(basis)}
    out = {}
    for a in alg.quiver.arrows:
        mat = np.zeros((len(basis), len(basis)), dtype=np.int64)
        for b in basis:
            z = mult(Arr(*a), b)
            if z is not None:
                mat[pos[z], pos[b]] = 1
        out[a] = mat
    return out


def projective_module(alg: Algebra, i: int) -> Module:
    """P_i = A e_i with arrows acting by left multiplication."""
    basis = alg.left_basis(i)
    action = _arrow_matrices(alg, basis, alg.product)
    return Module(alg, tuple(b.label() for b in basis), tuple(b.target for b in basis), action, f"P{i}")


def injective_module(alg: Algebra, i: int) -> Module:
    """Dual of the right projective e_i A; its socle is L_i.

    For a functional b* on e_i A, (a . b*)(x) = b*(x a), so a . b* is the sum of
    the x* with x a = b.
    """
    basis = alg.right_basis(i)
    pos = {b: k for k, b in enumerate(basis)}
    action = {}
    for a in alg.quiver.arrows:
        mat = np.zeros((len(basis), len(basis)), dtype=np.int64)
        for x in basis:
            z = alg.product(x, Arr(*a))
            if z is not None:
                mat[pos[x], pos[z]] = 1
        action[a] = mat
    labels = tuple(f"({b.label()})*" for b in basis)
    return Module(alg, labels, tuple(b.source for b in basis), action, f"I{i}")


def simple_module(alg: Algebra, i: int) -> Module:
    action = {a: np.zeros((1, 1), dtype=np.int64) for a in alg.quiver.arrows}
    return Module(alg, (f"L{i}",), (i,), action, f"L{i}")


def _graded_dims(module: Module, cols: np.ndarray) -> Counter:
    """Dimension per vertex of the (graded) span of ``cols``."""
    out = Counter()
    if cols.shape[1] == 0:
        return out
    g = np.array(module.grading)
    for v in sorted(set(module.grading)):
        d = linalg.rank(cols[g == v, :])
        if d:
            out[v] = d
    return out


def loewy_report(module: Module) -> LoewyReport:
    """Radical layers, top and socle, each as a multiset of simple labels (vertices).

    The radical of a module over this algebra is the span of all arrow images,
    and the socle is the joint kernel of the arrow actions.
    """
    current = np.eye(module.dim, dtype=object)
    dims = [_graded_dims(module, current)]
    while current.shape[1]:
        images = [module.action[a].astype(object) @ current for a in module.algebra.quiver.arrows]
        current = linalg.column_basis(np.hstack(images)) if images else current[:, :0]
        dims.append(_graded_dims(module, current))
    layers = [dims[k] - dims[k + 1] for k in range(len(dims) - 1)]
    layers = [c for c in layers if c]
    stacked = np.vstack([module.action[a] for a in module.algebra.quiver.arrows]).astype(object)
    kernel = linalg.nullspace(stacked, module.dim)
    soc_cols = np.array(kernel, dtype=object).T if kernel else np.zeros((module.dim, 0), dtype=object)
    socle = _graded_dims(module, soc_cols)
    top = layers[0] if layers else Counter()
    return LoewyReport(layers, socle, top, len(layers))


def hom_space(m: Module, n: Module) -> HomSpace:
    """All grading-preserving maps phi: M -> N with phi M_a = N_a phi for every arrow a."""
    variables = [(q, p) for p in range(m.dim) for q in range(n.dim) if n.grading[q] == m.grading[p]]
    if not variables:
        return HomSpace(0, [])
    col = {v: k for k, v in enumerate(variables)}
    rows = []
    for a in m.algebra.quiver.arrows:
        ma, na = m.action[a], n.action[a]
        for q in range(n.dim):
            for p in range(m.dim):
                row = [0] * len(variables)
                for x in range(m.dim):
                    if ma[x, p] and (q, x) in col:
                        row[col[q, x]] += int(ma[x, p])
                for y in range(n.dim):
                    if na[q, y] and (y, p) in col:
                        row[col[y, p]] -= int(na[q, y])
                if any(row):
                    rows.append(row)
    sols = linalg.nullspace(rows, len(variables)) if rows else linalg.nullspace(
        np.zeros((0, len(variables)), dtype=object), len(variables))
    basis = []
    for s in sols:
        phi = np.full((n.dim, m.dim), Fraction(0), dtype=object)
        for (q, p), k in col.items():
            phi[q, p] = s[k]
        basis.append(phi)
    return HomSpace(len(basis), basis)


def is_isomorphic(m: Module, n: Module, seed: int = 0, random_tries: int = 24) -> bool:
    """Look for an invertible module map M -> N.

    Tries the basis of Hom(M, N), then random small integer combinations, then
    every combination with coefficients in -3..3. Raises :class:`Inconclusive`
    if nothing is found although dimensions and Loewy data agree.
    """
    if m.dim != n.dim or m.dim_vector != n.dim_vector:
        return False
    if m.dim == 0:
        return True
    if loewy_report(m).as_dict() != loewy_report(n).as_dict():
        return False
    hom = hom_space(m, n).basis
    if not hom:
        return False
    for phi in hom:
        if linalg.is_invertible(phi):
            return True
    rng = random.Random(seed)
    for _ in range(random_tries):
        coeffs = [rng.randint(-3, 3) for _ in hom]
        if linalg.is_invertible(sum(c * phi for c, phi in zip(coeffs, hom))):
            return True
    for coeffs in itertools.product(range(-3, 4), repeat=len(hom)):
        if any(coeffs) and linalg.is_invertible(sum(c * phi for c, phi in zip(coeffs, hom))):
            return True
    raise Inconclusive(f"no invertible map {m.name} -> {n.name} with coefficients in -3..3")


def is_self_injective(alg: Algebra) -> bool:
    """Every indecomposable projective is isomorphic to one of the injective envelopes."""
    injectives = [injective_module(alg, j) for j in range(1, alg.n + 1)]
    for i in range(1, alg.n + 1):
        p = projective_module(alg, i)
        if not any(is_isomorphic(p, q) for q in injectives if q.dim_vector == p.dim_vector):
            return False
    return True


def tensor_dim(alg: Algebra, j: int, k: int) -> int:
    """dim of e_j A (x)_A A e_k, from the balancing relations x a (x) y = x (x) a y."""
    right = alg.right_basis(j)
    left = alg.left_basis(k)
    col = {(x, y): c for c, (x, y) in enumerate(itertools.product(right, left))}
    rows = []
    for x in right:
        for y in left:
            for a in alg.basis:
                row = [0] * len(col)
                xa = alg.product(x, a)
                ay = alg.product(a, y)
                if xa is not None:
                    row[col[xa, y]] += 1
                if ay is not None:
                    row[col[x, ay]] -= 1
                if any(row):
                    rows.append(row)
    return len(col) - (linalg.rank(rows) if rows else 0)
