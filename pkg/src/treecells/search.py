"""Decategorified 2-representations: checking, exhaustive search and classification.

A candidate of rank r is an r x r table ``cartan_b`` (dimensions of e_t B e_u for an
unknown algebra B) and a tensor ``m[i][j][s][t]``, the multiplicity of G_st in
M(F_ij). The composition law reads, with W = cartan_b and h the Cartan matrix of A,

    m[i][j] @ W @ m[k][l] == h[j, k] * m[i][l]      for all i, j, k, l.

How the search works
--------------------
Write M_ij for the r x r block m[i][j]. Under the law, if one block is nonzero
then every block is, because M_il = M_ij W M_jl / h[j, j] for all j. The row
support X_ij of M_ij then depends only on i and the column support Y_ij only
on j. So each object s has a type (I(s), J(s)) = ({i : s in X_i}, {j : s in Y_j}).
Since W has a positive diagonal, W[Y_j, X_k] = 0 forces Y_j and X_k apart when
h[j, k] = 0, so every j in J(s) is adjacent or equal to every k in I(s).

The search runs over multisets of types, one per object, and for each one picks
a pivot vertex p and unknowns U_i = M_ip, V_l = M_pl and W. The law is then
equivalent to

    V_j W U_k = h[j, k] D      and      U_i W D = k_p U_i,  D W V_l = k_p V_l,

with D = M_pp, plus the requirement that M_il = U_i W V_l / k_p is an integer
matrix within the entry cap. Leaves are rechecked against the full law.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra
from .flor import zero_row_col_symmetric


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search node budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class SearchBounds:
    r_max: int
    entry_cap: int = 2
    node_budget: int = 50_000_000

    def __post_init__(self):
        if self.r_max < 1 or self.entry_cap < 1:
            raise ValueError("r_max and entry_cap must be at least 1")
        if self.node_budget < 1:
            raise ValueError("node_budget must be positive")

    @classmethod
    def default(cls, alg: Algebra) -> "SearchBounds":
        return cls(r_max=alg.n + 1)


class CandidateRep:
    """Rank, candidate Cartan table and multiplicity tensor (all 0-based arrays)."""

    def __init__(self, r: int, cartan_b, m):
        self.r = int(r)
        self.cartan_b = np.asarray(cartan_b, dtype=np.int64).reshape(self.r, self.r)
        m = np.asarray(m, dtype=np.int64)
        if m.ndim != 4 or m.shape[0] != m.shape[1] or m.shape[2:] != (self.r, self.r):
            raise ValueError(f"m must have shape (n, n, {self.r}, {self.r}), got {m.shape}")
        self.m = m

    @property
    def n(self) -> int:
        return self.m.shape[0]

    def key(self) -> tuple[int, ...]:
        return tuple(self.cartan_b.ravel().tolist()) + tuple(self.m.ravel().tolist())

    def permuted(self, perm) -> "CandidateRep":
        """Object s of the result is object perm[s] of self."""
        p = list(perm)
        return CandidateRep(self.r, self.cartan_b[np.ix_(p, p)], self.m[:, :, p][:, :, :, p])

    def is_faithful(self) -> bool:
        return bool(self.m.any())

    def f_matrix(self, i: int, j: int) -> np.ndarray:
        """[F_ij] for 1-based vertices."""
        return self.m[i - 1, j - 1] @ self.cartan_b

    def as_dict(self) -> dict:
        return {"r": self.r, "cartanB": self.cartan_b.tolist(), "m": self.m.tolist()}

    def __eq__(self, other):
        return isinstance(other, CandidateRep) and self.r == other.r and self.m.shape == other.m.shape \
            and self.key() == other.key()

    def __hash__(self):
        return hash((self.r, self.m.shape, self.key()))

    def __repr__(self):
        return f"CandidateRep(r={self.r}, cartanB={self.cartan_b.tolist()})"


def canonical_form(rep: CandidateRep) -> CandidateRep:
    """Lexicographically least relabelling of the objects."""
    best = None
    for perm in itertools.permutations(range(rep.r)):
        cand = rep.permuted(perm)
        if best is None or cand.key() < best.key():
            best = cand
    return best


def cell_candidate(alg: Algebra) -> CandidateRep:
    """The cell 2-representation: r = n, cartanB = Cartan(A), m[i][j] = E_ij."""
    n = alg.n
    m = np.zeros((n, n, n, n), dtype=np.int64)
    for i, j in itertools.product(range(n), repeat=2):
        m[i, j, i, j] = 1
    return CandidateRep(n, alg.cartan_matrix(), m)


def zero_candidate(n: int) -> CandidateRep:
    return CandidateRep(1, [[1]], np.zeros((n, n, 1, 1), dtype=np.int64))


# ---------------------------------------------------------------------------
# checking (written against the full law, shares nothing with the search)


@dataclass
class XYReport:
    X: list[list[frozenset[int]]]
    Y: list[list[frozenset[int]]]
    x_independent: bool
    y_independent: bool
    X_reduced: list[frozenset[int]] | None
    Y_reduced: list[frozenset[int]] | None
    xy_equal: bool | None
    union_full: bool | None

    def as_dict(self) -> dict:
        def sets(lst):
            return None if lst is None else [sorted(s + 1 for s in x) for x in lst]

        return {
            "x_independent": self.x_independent,
            "y_independent": self.y_independent,
            "X": sets(self.X_reduced),
            "Y": sets(self.Y_reduced),
            "xy_equal": self.xy_equal,
            "union_full": self.union_full,
        }


def xy_sets(rep: CandidateRep) -> XYReport:
    """Row and column supports of every m[i][j] (object indices are 0-based)."""
    n = rep.n
    X = [[frozenset(np.flatnonzero(rep.m[i, j].any(axis=1)).tolist()) for j in range(n)] for i in range(n)]
    Y = [[frozenset(np.flatnonzero(rep.m[i, j].any(axis=0)).tolist()) for j in range(n)] for i in range(n)]
    x_ind = all(len({X[i][j] for j in range(n)}) == 1 for i in range(n))
    y_ind = all(len({Y[i][j] for i in range(n)}) == 1 for j in range(n))
    xr = [X[i][0] for i in range(n)] if x_ind else None
    yr = [Y[0][j] for j in range(n)] if y_ind else None
    xy = union = None
    if xr is not None and yr is not None:
        xy = all(xr[q] == yr[q] for q in range(n))
    if xr is not None:
        union = frozenset().union(*xr) == frozenset(range(rep.r))
    return XYReport(X, Y, x_ind, y_ind, xr, yr, xy, union)


CHECK_NAMES = (
    "composition",
    "transitivity",
    "faithful",
    "quasi_idempotent",
    "zero_row_col_symmetry",
    "diagonal_dichotomy",
    "single_x",
    "disjoint_x",
    "rank_equals_n",
    "cartan_equal",
    "xy_symmetry",
    "cell_tensor",
)
MANDATORY = ("composition", "transitivity")
LEMMA_CHECKS = ("single_x", "disjoint_x", "cartan_equal")


@dataclass
class CheckReport:
    checks: dict[str, bool]
    bijection: list[int] | None = None
    xy: XYReport | None = None

    @property
    def mandatory_ok(self) -> bool:
        return all(self.checks[c] for c in MANDATORY)

    @property
    def violations(self) -> list[str]:
        return [c for c in CHECK_NAMES if not self.checks[c]]

    def as_dict(self) -> dict:
        return {
            "checks": {c: self.checks[c] for c in CHECK_NAMES},
            "bijection": None if self.bijection is None else [s + 1 for s in self.bijection],
            "violations": self.violations,
        }


def check_candidate(alg: Algebra, rep: CandidateRep) -> CheckReport:
    h = alg.cartan_matrix()
    n, r = alg.n, rep.r
    if rep.n != n:
        raise ValueError(f"candidate has {rep.n} vertices, algebra has {n}")
    m, w = rep.m, rep.cartan_b
    k = np.diag(h)
    lhs = np.einsum("ijst,tu,kluv->ijklsv", m, w, m)
    rhs = h[None, :, :, None, None, None] * m[:, None, None, :, :, :]
    checks = {"composition": bool(np.array_equal(lhs, rhs))}
    total = np.eye(r, dtype=np.int64) + np.einsum("ijst,tu->su", m, w)
    checks["transitivity"] = bool((total > 0).all())
    checks["faithful"] = rep.is_faithful()
    fii = [m[i, i] @ w for i in range(n)]
    checks["quasi_idempotent"] = all(np.array_equal(f @ f, k[i] * f) for i, f in enumerate(fii))
    # X_q = Y_q is a statement about supports of the multiplicities m[i][i];
    # [F_ii] itself has zero rows without zero columns already for the cell rep
    checks["zero_row_col_symmetry"] = all(zero_row_col_symmetric(m[i, i]) for i in range(n))
    checks["diagonal_dichotomy"] = all(set(np.diag(f).tolist()) <= {0, int(k[i])} for i, f in enumerate(fii))
    xy = xy_sets(rep)
    xr = xy.X_reduced
    checks["single_x"] = xr is not None and all(len(x) == 1 for x in xr)
    checks["disjoint_x"] = xr is not None and all(not (a & b) for a, b in itertools.combinations(xr, 2)) \
        and all(xr)
    checks["rank_equals_n"] = r == n
    bij = None
    if checks["single_x"] and checks["disjoint_x"] and checks["rank_equals_n"]:
        bij = [next(iter(x)) for x in xr]
    checks["cartan_equal"] = bij is not None and bool(np.array_equal(w[np.ix_(bij, bij)], h))
    checks["xy_symmetry"] = bool(xy.xy_equal)
    cell = False
    if checks["cartan_equal"]:
        target = np.zeros_like(m)
        for i, j in itertools.product(range(n), repeat=2):
            target[i, j, bij[i], bij[j]] = 1
        cell = bool(np.array_equal(m, target))
    checks["cell_tensor"] = cell
    return CheckReport(checks, bij, xy)


# ---------------------------------------------------------------------------
# search


def support_types(h: np.ndarray, xy: bool = True) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Admissible (I, J) pairs: I nonempty, every j in J adjacent or equal to every k in I."""
    n = h.shape[0]
    subsets = [c for size in range(n + 1) for c in itertools.combinations(range(n), size)]
    out = []
    for big_i in subsets:
        if not big_i:
            continue
        for big_j in ([big_i] if xy else subsets):
            if all(h[j, k] > 0 for j in big_j for k in big_i):
                out.append((big_i, big_j))
    return out


class _StructureSolver:
    """Backtracking over (U, V, W) for one assignment of types to objects."""

    def __init__(self, h, types, cap, dichotomy, counter, budget):
        self.h = h.astype(np.int64)
        self.n = n = h.shape[0]
        self.r = r = len(types)
        self.k = np.diag(self.h)
        self.types = types
        self.cap = cap
        self.dichotomy = dichotomy
        self.counter = counter
        self.budget = budget
        self.X = [np.array([i in t[0] for t in types]) for i in range(n)]
        self.Y = [np.array([i in t[1] for t in types]) for i in range(n)]
        self.feasible = all(x.any() for x in self.X) and all(y.any() for y in self.Y)
        if not self.feasible:
            return
        p = min(range(n), key=lambda i: (int(self.X[i].sum() * self.Y[i].sum()), i))
        self.p, self.kp = p, int(self.k[p])
        self.Ulo = np.zeros((n, r, r), np.int64)
        self.Uhi = np.zeros((n, r, r), np.int64)
        self.Vlo = np.zeros((n, r, r), np.int64)
        self.Vhi = np.zeros((n, r, r), np.int64)
        self.Wlo = np.zeros((r, r), np.int64)
        self.Whi = np.zeros((r, r), np.int64)
        for i in range(n):
            self.Uhi[i][np.ix_(self.X[i], self.Y[p])] = cap
            self.Vhi[i][np.ix_(self.X[p], self.Y[i])] = cap
        for t, u in itertools.product(range(r), repeat=2):
            if all(h[j, kk] > 0 for j in types[t][1] for kk in types[u][0]):
                self.Whi[t, u] = cap
        if (np.diag(self.Whi) == 0).any():
            self.feasible = False
            return
        np.fill_diagonal(self.Wlo, 1)
        self.order = self._variable_order()

    def _variable_order(self):
        n, p, r = self.n, self.p, self.r
        order, seen_w = [], set()

        def add_u(i):
            order.extend(("U", i, s, t) for s in np.flatnonzero(self.X[i]) for t in np.flatnonzero(self.Y[p]))

        def add_v(l):
            order.extend(("V", l, s, t) for s in np.flatnonzero(self.X[p]) for t in np.flatnonzero(self.Y[l]))

        def add_w(rows, cols):
            for t in np.flatnonzero(rows):
                for u in np.flatnonzero(cols):
                    if (t, u) not in seen_w:
                        seen_w.add((t, u))
                        if self.Whi[t, u] > self.Wlo[t, u]:
                            order.append(("W", t, u))

        add_u(p)
        add_w(self.Y[p], self.X[p])
        done = [p]
        # grow outwards from the pivot so the blocks W[Y_j, X_b] become checkable early
        queue, visited = deque([p]), {p}
        while queue:
            a = queue.popleft()
            for b in range(n):
                if b == a or b in visited or self.h[a, b] == 0:
                    continue
                visited.add(b)
                queue.append(b)
                add_u(b)
                add_v(b)
                for j in done + [b]:
                    add_w(self.Y[j], self.X[b])
                    add_w(self.Y[b], self.X[j])
                done.append(b)
        add_w(np.ones(r, bool), np.ones(r, bool))
        return order

    def _bounds(self):
        vlo, vhi = self.Vlo.copy(), self.Vhi.copy()
        vlo[self.p], vhi[self.p] = self.Ulo[self.p], self.Uhi[self.p]
        return self.Ulo, self.Uhi, vlo, vhi

    def _consistent(self) -> bool:
        ul, uh, vl, vh = self._bounds()
        p, kp, h = self.p, self.kp, self.h
        wl, wh = self.Wlo, self.Whi
        dl, dh = ul[p], uh[p]
        for i in range(self.n):
            if (uh[i].max(1)[self.X[i]] == 0).any() or (uh[i].max(0)[self.Y[p]] == 0).any():
                return False
            if (vh[i].max(0)[self.Y[i]] == 0).any() or (vh[i].max(1)[self.X[p]] == 0).any():
                return False
        # V_j W U_k = h[j, k] D
        lo = np.einsum("jab,bc,kcd->jkad", vl, wl, ul)
        hi = np.einsum("jab,bc,kcd->jkad", vh, wh, uh)
        hd = h[:, :, None, None]
        if (lo > hd * dh).any() or (hi < hd * dl).any():
            return False
        # U_i W D = k_p U_i and D W V_l = k_p V_l
        lo = np.einsum("iab,bc,cd->iad", ul, wl, dl)
        hi = np.einsum("iab,bc,cd->iad", uh, wh, dh)
        if (lo > kp * uh).any() or (hi < kp * ul).any():
            return False
        lo = np.einsum("ab,bc,lcd->lad", dl, wl, vl)
        hi = np.einsum("ab,bc,lcd->lad", dh, wh, vh)
        if (lo > kp * vh).any() or (hi < kp * vl).any():
            return False
        ml = np.einsum("iab,bc,lcd->ilad", ul, wl, vl)
        if (ml > kp * self.cap).any():
            return False
        if self.dichotomy:
            mh = np.einsum("iab,bc,lcd->ilad", uh, wh, vh)
            for i in range(self.n):
                # diagonal of k_p [F_ii] must be 0 or k_p k_i
                d_lo = np.diag(ml[i, i] @ wl)
                d_hi = np.diag(mh[i, i] @ wh)
                target = kp * self.k[i]
                if not np.all((d_lo == 0) | ((d_lo <= target) & (d_hi >= target))):
                    return False
        return True

    def _leaf(self) -> CandidateRep | None:
        ul, _, vl, _ = self._bounds()
        w = self.Wlo
        num = np.einsum("iab,bc,lcd->ilad", ul, w, vl)
        if (num % self.kp).any():
            return None
        m = num // self.kp
        if (m > self.cap).any():
            return None
        lhs = np.einsum("ijst,tu,kluv->ijklsv", m, w, m)
        rhs = self.h[None, :, :, None, None, None] * m[:, None, None, :, :, :]
        if not np.array_equal(lhs, rhs):
            return None
        fm = np.einsum("ijab,bc->ijac", m, w)
        if not (np.eye(self.r, dtype=np.int64) + fm.sum(axis=(0, 1)) > 0).all():
            return None
        if self.dichotomy:
            for i in range(self.n):
                if not set(np.diag(fm[i, i]).tolist()) <= {0, int(self.k[i])}:
                    return None
        return CandidateRep(self.r, w.copy(), m)

    def solve(self) -> list[CandidateRep]:
        if not self.feasible or not self._consistent():
            return []
        out: list[CandidateRep] = []
        self._recurse(0, out)
        return out

    def _recurse(self, pos: int, out: list):
        self.counter[0] += 1
        if self.counter[0] > self.budget:
            raise BudgetExceeded(self.counter[0])
        if pos == len(self.order):
            rep = self._leaf()
            if rep is not None:
                out.append(rep)
            return
        var = self.order[pos]
        if var[0] == "W":
            lo, hi, idx = self.Wlo, self.Whi, var[1:]
        elif var[0] == "U":
            lo, hi, idx = self.Ulo, self.Uhi, var[1:]
        else:
            lo, hi, idx = self.Vlo, self.Vhi, var[1:]
        a, b = lo[idx], hi[idx]
        for val in range(a, b + 1):
            lo[idx] = hi[idx] = val
            if self._consistent():
                self._recurse(pos + 1, out)
        lo[idx], hi[idx] = a, b


@dataclass
class SearchResult:
    solutions: list[CandidateRep]
    nodes: int


def run_search(alg: Algebra, bounds: SearchBounds, require_faithful: bool = False,
               require_diag_dichotomy: bool = False, require_xy_symmetry: bool = True) -> SearchResult:
    """Like :func:`search` but also returns the node count."""
    h = alg.cartan_matrix()
    types = support_types(h, xy=require_xy_symmetry)
    counter = [0]
    found: dict[tuple, CandidateRep] = {}
    if not require_faithful:
        # a zero action is only transitive on a single object; cartanB is normalised to [[1]]
        z = zero_candidate(alg.n)
        found[z.r, z.key()] = z
    for r in range(1, bounds.r_max + 1):
        for combo in itertools.combinations_with_replacement(range(len(types)), r):
            solver = _StructureSolver(h, [types[c] for c in combo], bounds.entry_cap,
                                      require_diag_dichotomy, counter, bounds.node_budget)
            for rep in solver.solve():
                c = canonical_form(rep)
                found.setdefault((c.r, c.key()), c)
    sols = [found[key] for key in sorted(found)]
    return SearchResult(sols, counter[0])


def search(alg: Algebra, bounds: SearchBounds, require_faithful: bool = False,
           require_diag_dichotomy: bool = False, require_xy_symmetry: bool = True) -> list[CandidateRep]:
    """All candidates within ``bounds`` up to relabelling of objects, sorted by (r, key).

    Every result satisfies the composition law and transitivity. With
    ``require_xy_symmetry`` (the default) only candidates whose row and column
    supports agree, X_q = Y_q, are produced.
    """
    return run_search(alg, bounds, require_faithful, require_diag_dichotomy, require_xy_symmetry).solutions


# ---------------------------------------------------------------------------
# classification


@dataclass
class Verdict:
    confirmed: bool
    faithful_solutions: list[CandidateRep]
    unfaithful_solutions: list[CandidateRep]
    extras: list[tuple[CandidateRep, list[str]]]
    unexplained: list[CandidateRep]
    note: str | None
    nodes: int
    bounds: SearchBounds
    reports: dict = field(default_factory=dict)

    def as_dict(self, alg: Algebra) -> dict:
        def entry(rep, violated=None):
            d = rep.as_dict()
            d["checks"] = check_candidate(alg, rep).as_dict()["checks"]
            if violated is not None:
                d["violated"] = violated
            return d

        return {
            "confirmed": self.confirmed,
            "bounds": {"r_max": self.bounds.r_max, "entry_cap": self.bounds.entry_cap,
                       "node_budget": self.bounds.node_budget},
            "faithful_solutions": [entry(r) for r in self.faithful_solutions],
            "unfaithful_solutions": [entry(r) for r in self.unfaithful_solutions],
            "extras": [entry(r, v) for r, v in self.extras],
            "unexplained": [entry(r) for r in self.unexplained],
            "note": self.note,
            "nodes": self.nodes,
        }


def classify(alg: Algebra, bounds: SearchBounds | None = None) -> Verdict:
    """Compare all solutions within bounds with the cell 2-representation.

    Confirmed means: the faithful solutions satisfying the diagonal dichotomy are
    exactly the cell tensor, the only unfaithful one is the zero action, and every
    further solution found without the dichotomy violates one of the support or
    Cartan checks.
    """
    bounds = bounds or SearchBounds.default(alg)
    cell = canonical_form(cell_candidate(alg))
    strict = run_search(alg, bounds, require_faithful=False, require_diag_dichotomy=True)
    loose = run_search(alg, bounds, require_faithful=True, require_diag_dichotomy=False)
    faithful = [r for r in strict.solutions if r.is_faithful()]
    unfaithful = [r for r in strict.solutions if not r.is_faithful()]
    extras, unexplained = [], []
    for rep in loose.solutions:
        if rep == cell:
            continue
        report = check_candidate(alg, rep)
        violated = [c for c in LEMMA_CHECKS if not report.checks[c]]
        extras.append((rep, violated))
        if not violated:
            unexplained.append(rep)
    confirmed = (faithful == [cell] and unfaithful == [zero_candidate(alg.n)] and not unexplained)
    s = alg.special
    note = None
    if not s or s == frozenset(alg.instance.vertices):
        note = "self-injective instance: covered by prior work"
    return Verdict(confirmed, faithful, unfaithful, extras, unexplained, note,
                   strict.nodes + loose.nodes, bounds)
