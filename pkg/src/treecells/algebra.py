"""The algebra A = kQ/I attached to a tree with special leaves.

Products are written right to left: ``x * y`` means "first y, then x", so an
arrow ``i -> j`` followed by ``j -> k`` is the product ``(j -> k) * (i -> j)``.

The defining relations are

* a path through three distinct vertices is zero,
* at a vertex v, the two-step loops ``v -> u -> v`` through different
  neighbours u all coincide,
* the two-step loop at a special leaf is zero.

They rewrite every path to zero or to a single basis element, so the basis is
the idempotents, the arrows, and one loop per non-special vertex.
"""

from __future__ import annotations

from enum import IntEnum
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .tree import TreeInstance, doubled_quiver, validate


class NonComposable(ValueError):
    pass


class Kind(IntEnum):
    IDEM = 0
    ARROW = 1
    LOOP = 2


class BasisElement(NamedTuple):
    kind: Kind
    source: int
    target: int

    @property
    def length(self) -> int:
        return int(self.kind)

    def label(self) -> str:
        if self.kind == Kind.IDEM:
            return f"e{self.source}"
        if self.kind == Kind.ARROW:
            return f"{self.source}->{self.target}"
        return f"loop{self.source}"

    def __repr__(self):
        return self.label()


def Idem(i: int) -> BasisElement:
    return BasisElement(Kind.IDEM, i, i)


def Arr(i: int, j: int) -> BasisElement:
    return BasisElement(Kind.ARROW, i, j)


def Loop(i: int) -> BasisElement:
    return BasisElement(Kind.LOOP, i, i)


class LinComb(dict):
    """Integer combination of basis elements; zero coefficients are dropped."""

    def __init__(self, items=()):
        super().__init__()
        pairs = items.items() if isinstance(items, dict) else items
        for b, c in pairs:
            if c:
                self[b] = self.get(b, 0) + c
                if not self[b]:
                    del self[b]

    @classmethod
    def of(cls, b: BasisElement | None) -> "LinComb":
        return cls() if b is None else cls({b: 1})

    def __add__(self, other: "LinComb") -> "LinComb":
        return LinComb(list(self.items()) + list(other.items()))

    def __sub__(self, other: "LinComb") -> "LinComb":
        return LinComb(list(self.items()) + [(b, -c) for b, c in other.items()])

    def __rmul__(self, scalar: int) -> "LinComb":
        return LinComb({b: scalar * c for b, c in self.items()})

    def __repr__(self):
        if not self:
            return "0"
        return " + ".join(f"{c}*{b.label()}" if c != 1 else b.label() for b, c in sorted(self.items()))


class Algebra:
    """Basis, multiplication table and Cartan data of A for a validated tree instance."""

    def __init__(self, inst: TreeInstance):
        self.instance = validate(inst)
        self.n = inst.n
        self.quiver = doubled_quiver(inst)
        basis = [Idem(i) for i in inst.vertices]
        basis += [Arr(i, j) for i, j in self.quiver.arrows]
        basis += [Loop(i) for i in inst.vertices if i not in inst.special]
        self.basis: tuple[BasisElement, ...] = tuple(basis)
        self.index = {b: k for k, b in enumerate(self.basis)}
        self._mult: dict[tuple[BasisElement, BasisElement], BasisElement] = {}
        self._cartan: np.ndarray | None = None
        for x in self.basis:
            for y in self.basis:
                z = self._basis_product(x, y)
                if z is not None:
                    self._mult[x, y] = z

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def special(self) -> frozenset[int]:
        return self.instance.special

    def _basis_product(self, x: BasisElement, y: BasisElement) -> BasisElement | None:
        if y.target != x.source:
            return None
        if x.kind == Kind.IDEM:
            return y
        if y.kind == Kind.IDEM:
            return x
        if x.length + y.length >= 3:
            return None
        # two arrows: y = (i -> j), x = (j -> k)
        i, k = y.source, x.target
        if k != i:
            return None
        return None if i in self.special else Loop(i)

    def product(self, x: BasisElement, y: BasisElement) -> BasisElement | None:
        """``x * y`` for basis elements, or None when it vanishes."""
        return self._mult.get((x, y))

    def multiply(self, x: LinComb, y: LinComb) -> LinComb:
        out: dict[BasisElement, int] = {}
        for bx, cx in x.items():
            for by, cy in y.items():
                z = self._mult.get((bx, by))
                if z is not None:
                    out[z] = out.get(z, 0) + cx * cy
        return LinComb(out)

    def normal_form(self, word: Sequence[tuple[int, int]], vertex: int | None = None) -> LinComb:
        """Reduce a path, given as arrows in the order they are traversed.

        The empty word needs ``vertex`` and gives the idempotent there.
        """
        arrows = set(self.quiver.arrows)
        if not word:
            if vertex is None or vertex not in self.instance.vertices:
                raise NonComposable("the empty word needs a vertex of the tree")
            return LinComb.of(Idem(vertex))
        for a in word:
            if tuple(a) not in arrows:
                raise NonComposable(f"{a} is not an arrow of the doubled quiver")
        for a, b in zip(word, word[1:]):
            if a[1] != b[0]:
                raise NonComposable(f"{a} is not followed by {b} in a path")
        if vertex is not None and vertex != word[0][0]:
            raise NonComposable(f"word starts at {word[0][0]}, not {vertex}")
        cur: BasisElement | None = Idem(word[0][0])
        for i, j in word:
            cur = self.product(Arr(i, j), cur)
            if cur is None:
                return LinComb()
        return LinComb.of(cur)

    def hom_dim(self, l: int, k: int) -> int:
        """dim e_l A e_k, i.e. the number of basis paths from k to l."""
        return sum(1 for b in self.basis if b.target == l and b.source == k)

    def cartan_matrix(self) -> np.ndarray:
        """Entry (s, t) is dim e_s A e_t (vertices shifted to 0-based positions)."""
        if self._cartan is None:
            c = np.zeros((self.n, self.n), dtype=np.int64)
            for b in self.basis:
                c[b.target - 1, b.source - 1] += 1
            self._cartan = c
        return self._cartan.copy()

    def mult_table(self) -> list[tuple[int, int, int]]:
        """Nonzero products as index triples (x, y, x*y), sorted."""
        return sorted((self.index[x], self.index[y], self.index[z]) for (x, y), z in self._mult.items())

    def table_array(self) -> np.ndarray:
        """(dim+1)x(dim+1) array of product indices; index ``dim`` stands for zero."""
        d = self.dim
        t = np.full((d + 1, d + 1), d, dtype=np.int64)
        for (x, y), z in self._mult.items():
            t[self.index[x], self.index[y]] = self.index[z]
        return t

    def check_associativity(self) -> bool:
        """Compare (xy)z with x(yz) on every basis triple at once."""
        t = self.table_array()
        idx = np.arange(self.dim + 1)
        left = t[t[:, :, None], idx[None, None, :]]
        right = t[idx[:, None, None], t[None, :, :]]
        return bool(np.array_equal(left, right))

    def is_unit(self) -> bool:
        """e_1 + ... + e_n acts as the identity on both sides."""
        one = LinComb({Idem(i): 1 for i in self.instance.vertices})
        for b in self.basis:
            x = LinComb.of(b)
            if self.multiply(one, x) != x or self.multiply(x, one) != x:
                return False
        return True

    def relations(self) -> list[tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...] | None]]:
        """Generators of the ideal as (word, word) equalities or (word, None) zero relations.

        Words list arrows in traversal order.
        """
        inst = self.instance
        rels = []
        for v2 in inst.vertices:
            nbrs = inst.neighbors[v2]
            for v1 in nbrs:
                for v3 in nbrs:
                    if v1 != v3:
                        rels.append((((v1, v2), (v2, v3)), None))
            for v1, v3 in zip(nbrs, nbrs[1:]):
                rels.append((((v2, v1), (v1, v2)), ((v2, v3), (v3, v2))))
        for s in sorted(inst.special):
            for v in inst.neighbors[s]:
                rels.append((((s, v), (v, s)), None))
        return rels

    def right_basis(self, i: int) -> list[BasisElement]:
        """Basis of e_i A."""
        return [b for b in self.basis if b.target == i]

    def left_basis(self, i: int) -> list[BasisElement]:
        """Basis of A e_i."""
        return [b for b in self.basis if b.source == i]


def build_algebra(inst: TreeInstance) -> Algebra:
    return Algebra(inst)


def words_of_length(alg: Algebra, length: int) -> Iterable[tuple[tuple[int, int], ...]]:
    """All paths with ``length`` arrows, in traversal order."""
    words: list[tuple[tuple[int, int], ...]] = [(a,) for a in alg.quiver.arrows]
    for _ in range(length - 1):
        words = [w + (a,) for w in words for a in alg.quiver.arrows if a[0] == w[-1][1]]
    return words if length > 0 else []
