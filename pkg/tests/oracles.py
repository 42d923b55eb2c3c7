"""Reference computations that share no code with the package.

* graded dimensions of kQ/I from paths and the span of the ideal,
* Green-style preorders on 1-morphisms from the composition rule alone,
* a brute-force enumerator for decategorified 2-representations,
* a random generator of nonnegative idempotents in block form.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


# ---------------------------------------------------------------------------
# path algebra


def arrows_of(n: int, edges) -> list[tuple[int, int]]:
    return sorted([(i, j) for i, j in edges] + [(j, i) for i, j in edges])


def paths(n: int, edges, length: int) -> list[tuple[tuple[int, int], ...]]:
    """Paths with ``length`` arrows in traversal order; length 0 gives one empty path per vertex."""
    if length == 0:
        return [((v, v),) for v in range(1, n + 1)]  # marker for the idempotent at v
    arr = arrows_of(n, edges)
    out = [(a,) for a in arr]
    for _ in range(length - 1):
        out = [p + (a,) for p in out for a in arr if a[0] == p[-1][1]]
    return out


def relation_vectors(n: int, edges, special) -> list[dict]:
    """Generators of the ideal as formal combinations of length-two paths."""
    nbrs = {v: sorted([j for i, j in edges if i == v] + [i for i, j in edges if j == v]) for v in range(1, n + 1)}
    rels = []
    for v in range(1, n + 1):
        for a, b in itertools.permutations(nbrs[v], 2):
            rels.append({((a, v), (v, b)): 1})
        for a, b in itertools.combinations(nbrs[v], 2):
            rels.append({((v, a), (a, v)): 1, ((v, b), (b, v)): -1})
    for s in special:
        for a in nbrs[s]:
            rels.append({((s, a), (a, s)): 1})
    return rels


def ideal_rows(n: int, edges, special, length: int, index: dict) -> list[np.ndarray]:
    """Vectors u r v spanning the ideal in the given path length."""
    rows = []
    for rel in relation_vectors(n, edges, special):
        for left in range(length - 1):
            right = length - 2 - left
            pre = [()] if left == 0 else paths(n, edges, left)
            post = [()] if right == 0 else paths(n, edges, right)
            for p in pre:
                for q in post:
                    vec = np.zeros(len(index), dtype=np.int64)
                    for word, c in rel.items():
                        full = tuple(p) + word + tuple(q)
                        if all(x[1] == y[0] for x, y in zip(full, full[1:])):
                            vec[index[full]] += c
                    if vec.any():
                        rows.append(vec)
    return rows


def graded_quotient_dims(n: int, edges, special, max_length: int = 4) -> list[int]:
    """dim of (kQ/I) in each path length 0..max_length."""
    out = [n]
    for length in range(1, max_length + 1):
        ps = paths(n, edges, length)
        index = {p: k for k, p in enumerate(ps)}
        rows = ideal_rows(n, edges, special, length, index)
        rank = np.linalg.matrix_rank(np.array(rows, dtype=float)) if rows else 0
        out.append(len(ps) - int(rank))
    return out


def in_ideal_span(n: int, edges, special, combo: dict) -> bool:
    """Whether a combination of length-two paths lies in the ideal."""
    ps = paths(n, edges, 2)
    index = {p: k for k, p in enumerate(ps)}
    rows = ideal_rows(n, edges, special, 2, index)
    vec = np.zeros(len(ps))
    for word, c in combo.items():
        vec[index[word]] += c
    base = np.array(rows, dtype=float).reshape(-1, len(ps))
    r0 = np.linalg.matrix_rank(base) if len(rows) else 0
    r1 = np.linalg.matrix_rank(np.vstack([base, vec])) if len(rows) else int(vec.any())
    return r0 == r1


# ---------------------------------------------------------------------------
# 1-morphisms and cells


def hom_dim_formula(n: int, edges, special, l: int, k: int) -> int:
    if k == l:
        return 1 if k in special else 2
    return 1 if (min(k, l), max(k, l)) in {tuple(sorted(e)) for e in edges} else 0


def green_cells(n: int, edges, special) -> tuple[list[frozenset], list[frozenset]]:
    """Left and two-sided cells from the rule F_ij F_kl = hom(j, k) F_il, by transitive closure."""
    labels = ["1"] + [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]

    def comp(a, b):  # summands of a o b
        if a == "1":
            return {b}
        if b == "1":
            return {a}
        return {(a[0], b[1])} if hom_dim_formula(n, edges, special, a[1], b[0]) else set()

    idx = {lab: k for k, lab in enumerate(labels)}
    size = len(labels)
    left = np.eye(size, dtype=bool)
    two = np.eye(size, dtype=bool)
    for g in labels:
        for k in labels:
            for h in comp(k, g):
                left[idx[h], idx[g]] = True
            for k2 in labels:
                for x in comp(k, g):
                    for h in comp(x, k2):
                        two[idx[h], idx[g]] = True
    for rel in (left, two):
        for m in range(size):
            rel |= rel[:, [m]] & rel[[m], :]

    def classes(rel):
        eq = rel & rel.T
        seen, out = set(), []
        for a in range(size):
            if a not in seen:
                cls = frozenset(labels[b] for b in range(size) if eq[a, b])
                seen.update(idx[x] for x in cls)
                out.append(cls)
        return out

    return classes(left), classes(two)


# ---------------------------------------------------------------------------
# brute-force 2-representation enumerator


def all_matrices(r: int, cap: int, diag_min: int = 0):
    for entries in itertools.product(range(cap + 1), repeat=r * r):
        m = np.array(entries, dtype=np.int64).reshape(r, r)
        if (np.diag(m) >= diag_min).all():
            yield m


def brute_force_reps(h: np.ndarray, r: int, cap: int):
    """Every (W, m) with entries <= cap satisfying the composition law and transitivity.

    Blocks m[i][j] are filled one at a time; every law instance is tested as
    soon as the three blocks it mentions are known.
    """
    n = h.shape[0]
    blocks = [(i, j) for i in range(n) for j in range(n)]
    mats = list(all_matrices(r, cap))
    found = []
    for w in all_matrices(r, cap, diag_min=1):
        m = np.zeros((n, n, r, r), dtype=np.int64)
        known: set = set()

        def consistent(new):
            for (i, j) in known:
                for (k, l) in known:
                    if (i, l) in known and new in ((i, j), (k, l), (i, l)):
                        if not np.array_equal(m[i, j] @ w @ m[k, l], h[j, k] * m[i, l]):
                            return False
            return True

        def dfs(pos):
            if pos == len(blocks):
                total = np.eye(r, dtype=np.int64) + sum(m[i, j] @ w for i, j in blocks)
                if (total > 0).all():
                    found.append((w.copy(), m.copy()))
                return
            b = blocks[pos]
            known.add(b)
            for cand in mats:
                m[b] = cand
                if consistent(b):
                    dfs(pos + 1)
            m[b] = 0
            known.discard(b)

        dfs(0)
    return found


def rep_flags(h: np.ndarray, w: np.ndarray, m: np.ndarray) -> dict:
    n = h.shape[0]
    faithful = bool(m.any())
    dich = all(set(np.diag(m[i, i] @ w).tolist()) <= {0, int(h[i, i])} for i in range(n))
    rows = [[frozenset(np.flatnonzero(m[i, j].sum(axis=1)).tolist()) for j in range(n)] for i in range(n)]
    cols = [[frozenset(np.flatnonzero(m[i, j].sum(axis=0)).tolist()) for j in range(n)] for i in range(n)]
    xy = all(rows[q][j] == rows[q][0] for q in range(n) for j in range(n)) and \
        all(cols[i][q] == cols[0][q] for q in range(n) for i in range(n)) and \
        all(rows[q][0] == cols[0][q] for q in range(n))
    return {"faithful": faithful, "dichotomy": dich, "xy": xy}


def orbit(w: np.ndarray, m: np.ndarray) -> set:
    r = w.shape[0]
    out = set()
    for p in itertools.permutations(range(r)):
        p = list(p)
        out.add((r, tuple(w[np.ix_(p, p)].ravel()), tuple(m[:, :, p][:, :, :, p].ravel())))
    return out


def as_key(w, m) -> tuple:
    w = np.asarray(w)
    return (w.shape[0], tuple(w.ravel()), tuple(np.asarray(m).ravel()))


# ---------------------------------------------------------------------------
# idempotent matrices


def block_idempotent(rng, size: int, lam: int = 1) -> np.ndarray:
    """lam * E for a random nonnegative idempotent E built from the block form and shuffled."""
    k_first = rng.randint(0, size - 1)
    k_core = rng.randint(1, size - k_first)
    k_last = size - k_first - k_core
    core = np.full((k_core, k_core), Fraction(0), dtype=object)
    start = 0
    while start < k_core:
        s = rng.randint(1, k_core - start)
        x = [Fraction(rng.randint(1, 3)) for _ in range(s)]
        y = [Fraction(rng.randint(1, 3)) for _ in range(s)]
        norm = sum(a * b for a, b in zip(x, y))
        for a in range(s):
            for b in range(s):
                core[start + a, start + b] = x[a] * y[b] / norm
        start += s
    a = np.array([[Fraction(rng.randint(0, 2)) for _ in range(k_core)] for _ in range(k_first)],
                 dtype=object).reshape(k_first, k_core)
    b = np.array([[Fraction(rng.randint(0, 2)) for _ in range(k_last)] for _ in range(k_core)],
                 dtype=object).reshape(k_core, k_last)
    e = np.full((size, size), Fraction(0), dtype=object)
    e[k_first:k_first + k_core, k_first:k_first + k_core] = core
    if k_first:
        e[:k_first, k_first:k_first + k_core] = a.dot(core)
    if k_last:
        e[k_first:k_first + k_core, k_first + k_core:] = core.dot(b)
    if k_first and k_last:
        e[:k_first, k_first + k_core:] = a.dot(core).dot(b)
    perm = list(range(size))
    rng.shuffle(perm)
    return lam * e[np.ix_(perm, perm)]
