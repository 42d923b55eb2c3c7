"""Bundled fixture suite: one pass/fail line per acceptance criterion."""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .algebra import Algebra
from .flor import flor_decompose, verify_flor, zero_row_col_symmetric
from .modules import (injective_module, is_isomorphic, is_self_injective, loewy_report,
                      projective_module, tensor_dim)
from .search import SearchBounds, classify
from .tree import TreeInstance, parse_tree_spec, path_instance, random_instance, validate
from .twocat import OneMorphism, cell_rep_matrices, cells, compose


def data_dir() -> Path:
    return Path(str(resources.files("treecells") / "data"))


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s)"


def load_fixtures(directory: Path | None = None) -> dict[str, TreeInstance]:
    """Tree fixtures listed in the manifest, parsed and validated."""
    directory = Path(directory) if directory else data_dir()
    manifest = json.loads((directory / "fixtures.json").read_text())
    return {name: validate(parse_tree_spec((directory / name).read_text())) for name in manifest["trees"]}


def fixture_manifest(directory: Path | None = None) -> dict:
    directory = Path(directory) if directory else data_dir()
    return json.loads((directory / "fixtures.json").read_text())


def expected_hom_dim(inst: TreeInstance, l: int, k: int) -> int:
    if k == l:
        return 1 if k in inst.special else 2
    return 1 if inst.adjacent(k, l) else 0


def is_injective_projective(alg: Algebra, i: int) -> bool:
    p = projective_module(alg, i)
    return any(is_isomorphic(p, injective_module(alg, j)) for j in alg.instance.vertices
               if injective_module(alg, j).dim_vector == p.dim_vector)


def projective_shape_ok(alg: Algebra, i: int) -> bool:
    """Loewy data and injectivity of P_i against the cases i outside S, S = V, and i in S != V."""
    inst = alg.instance
    rep = loewy_report(projective_module(alg, i))
    injective = is_injective_projective(alg, i)
    if i not in inst.special:
        return (injective and rep.loewy_length == 3 and rep.top == Counter([i]) and rep.socle == Counter([i])
                and rep.layers[1] == Counter(inst.neighbors[i]))
    (j,) = inst.neighbors[i]
    shape = rep.loewy_length == 2 and rep.top == Counter([i]) and rep.socle == Counter([j])
    return shape and injective == (inst.special == frozenset(inst.vertices))


def _instances(fixtures: dict[str, TreeInstance], rng: random.Random, count: int, n_max: int):
    return list(fixtures.values()) + [random_instance(rng, 2, n_max) for _ in range(count)]


def criterion_1(fixtures, manifest, rng) -> tuple[bool, str]:
    bad = []
    for name, inst in fixtures.items():
        alg = Algebra(inst)
        if alg.dim != manifest["trees"][name]["dim"]:
            bad.append(name)
    insts = [random_instance(rng, 2, 8) for _ in range(50)]
    for inst in list(fixtures.values()) + insts:
        alg = Algebra(inst)
        if alg.dim != 4 * inst.n - 2 - len(inst.special) or not alg.check_associativity():
            bad.append(repr(inst))
    return not bad, f"{len(fixtures) + 50} instances" + (f", failing {bad[:3]}" if bad else "")


def criterion_2(fixtures, manifest, rng) -> tuple[bool, str]:
    count = 0
    for inst in _instances(fixtures, rng, 30, 8):
        alg = Algebra(inst)
        for l in inst.vertices:
            for k in inst.vertices:
                count += 1
                if alg.hom_dim(l, k) != expected_hom_dim(inst, l, k):
                    return False, f"mismatch at ({l},{k}) on {inst}"
    return True, f"{count} pairs"


def criterion_3(fixtures, manifest, rng) -> tuple[bool, str]:
    insts = [path_instance(n) for n in range(3, 7)] + _instances(fixtures, rng, 10, 6)
    count = 0
    for inst in insts:
        alg = Algebra(inst)
        for i in inst.vertices:
            count += 1
            if not projective_shape_ok(alg, i):
                return False, f"P_{i} of {inst}"
    return True, f"{count} projectives"


def criterion_4(fixtures, manifest, rng) -> tuple[bool, str]:
    count = 0
    for inst in _instances(fixtures, rng, 20, 6):
        alg = Algebra(inst)
        expected = not inst.special or inst.special == frozenset(inst.vertices)
        count += 1
        if is_self_injective(alg) != expected:
            return False, f"{inst}"
    return True, f"{count} instances, no inconclusive outcome"


def criterion_5(fixtures, manifest, rng) -> tuple[bool, str]:
    count = 0
    for inst in fixtures.values():
        alg = Algebra(inst)
        for j in inst.vertices:
            for k in inst.vertices:
                count += 1
                if tensor_dim(alg, j, k) != alg.hom_dim(j, k):
                    return False, f"({j},{k}) on {inst}"
    return True, f"{count} pairs"


def criterion_6(fixtures, manifest, rng) -> tuple[bool, str]:
    for inst in _instances(fixtures, rng, 5, 5):
        cs = cells(Algebra(inst))
        if len(cs.two_sided_cells) != 2 or len(cs.left_cells) != inst.n + 1:
            return False, f"{inst}"
    return True, "2 two-sided and n+1 left cells"


def criterion_7(fixtures, manifest, rng) -> tuple[bool, str]:
    for inst in _instances(fixtures, rng, 5, 6):
        alg = Algebra(inst)
        h = alg.cartan_matrix()
        mats = cell_rep_matrices(alg)
        n = inst.n
        for (i, j), a in mats.items():
            for (k, l), b in mats.items():
                if not np.array_equal(a @ b, h[j - 1, k - 1] * mats[i, l]):
                    return False, f"product ({i},{j})({k},{l}) on {inst}"
        for i in range(1, n + 1):
            if np.trace(mats[i, i]) != h[i - 1, i - 1]:
                return False, f"trace of F({i},{i})"
        # the matrices also agree with composition of 1-morphisms
        f = compose(alg, OneMorphism.F(n, 1, 1), OneMorphism.F(n, 1, 1))
        if f.f_mult[0][0] != h[0, 0]:
            return False, "composition F11 F11"
    return True, "products and traces"


def random_block_idempotent(rng: np.random.Generator, size: int):
    """A nonnegative rational idempotent assembled from the block form, then shuffled."""
    from fractions import Fraction

    n_first = int(rng.integers(0, size))
    n_core = int(rng.integers(1, size - n_first + 1))
    n_last = size - n_first - n_core
    sizes = []
    left = n_core
    while left:
        s = int(rng.integers(1, left + 1))
        sizes.append(s)
        left -= s
    j = np.full((n_core, n_core), Fraction(0), dtype=object)
    pos = 0
    for s in sizes:
        x = [Fraction(int(v)) for v in rng.integers(1, 4, size=s)]
        y = [Fraction(int(v)) for v in rng.integers(1, 4, size=s)]
        scale = sum(a * b for a, b in zip(x, y))
        for a in range(s):
            for b in range(s):
                j[pos + a, pos + b] = x[a] * y[b] / scale
        pos += s
    a_mat = np.array([[Fraction(int(v)) for v in row] for row in rng.integers(0, 3, size=(n_first, n_core))],
                     dtype=object).reshape(n_first, n_core)
    b_mat = np.array([[Fraction(int(v)) for v in row] for row in rng.integers(0, 3, size=(n_core, n_last))],
                     dtype=object).reshape(n_core, n_last)
    e = np.full((size, size), Fraction(0), dtype=object)
    c0, c1 = n_first, n_first + n_core
    aj = a_mat.dot(j) if n_first else a_mat
    jb = j.dot(b_mat) if n_last else b_mat
    e[c0:c1, c0:c1] = j
    if n_first:
        e[:c0, c0:c1] = aj
    if n_last:
        e[c0:c1, c1:] = jb
    if n_first and n_last:
        e[:c0, c1:] = a_mat.dot(j).dot(b_mat)
    perm = rng.permutation(size)
    return e[np.ix_(perm, perm)]


def criterion_8(fixtures, manifest, rng) -> tuple[bool, str]:
    gen = np.random.default_rng(rng.randrange(2**32))
    for _ in range(200):
        e = random_block_idempotent(gen, int(gen.integers(1, 9)))
        lam = int(gen.integers(1, 4))
        if not verify_flor(lam * e, flor_decompose(lam * e)):
            return False, "random block matrix"
    count = 0
    for inst in fixtures.values():
        alg = Algebra(inst)
        for (i, k), mat in cell_rep_matrices(alg).items():
            if i != k:
                continue
            count += 1
            form = flor_decompose(mat)
            if form.blocks_absent() != zero_row_col_symmetric(mat):
                return False, f"[F({i},{i})] of {inst}"
    return True, f"200 random matrices, {count} cell matrices"


_verdicts: dict = {}


def _verdict(inst: TreeInstance):
    if inst not in _verdicts:
        alg = Algebra(inst)
        _verdicts[inst] = classify(alg, SearchBounds(r_max=alg.n + 1, entry_cap=2))
    return _verdicts[inst]


def criterion_9(fixtures, manifest, rng, full: bool = False) -> tuple[bool, str]:
    names = [n for n, v in manifest["trees"].items() if v.get("classify") == "quick"]
    if full:
        names += [n for n, v in manifest["trees"].items() if v.get("classify") == "full"]
    out = []
    for name in names:
        if not _verdict(fixtures[name]).confirmed:
            return False, f"{name} not confirmed"
        out.append(name)
    return True, "confirmed on " + ", ".join(out)


def criterion_10(fixtures, manifest, rng, full: bool = False) -> tuple[bool, str]:
    names = [n for n, v in manifest["trees"].items() if v.get("classify") == "quick"]
    if full:
        names += [n for n, v in manifest["trees"].items() if v.get("classify") == "full"]
    total = 0
    for name in names:
        verdict = _verdict(fixtures[name])
        if verdict.unexplained or any(not v for _, v in verdict.extras):
            return False, f"{name} has an extra solution passing every lemma check"
        total += len(verdict.extras)
    return True, f"{total} extra solutions, each violating a lemma check"


CRITERIA = [
    (1, "dimension formula and associativity", criterion_1),
    (2, "hom dimension case formula", criterion_2),
    (3, "projective Loewy structure", criterion_3),
    (4, "self-injectivity criterion", criterion_4),
    (5, "tensor dimension oracle", criterion_5),
    (6, "cell structure", criterion_6),
    (7, "cell matrices", criterion_7),
    (8, "flor normal form", criterion_8),
    (9, "classification", criterion_9),
    (10, "extra solutions annotated", criterion_10),
]


def run_selftest(seed: int = 0, full: bool = False, directory: Path | None = None) -> list[CriterionResult]:
    results = []
    try:
        fixtures = load_fixtures(directory)
        manifest = fixture_manifest(directory)
    except (ValueError, OSError, KeyError) as exc:
        return [CriterionResult(0, "fixtures", False, str(exc), 0.0)]
    for number, name, fn in CRITERIA:
        rng = random.Random(seed * 1000 + number)
        start = time.perf_counter()
        try:
            if number in (9, 10):
                ok, detail = fn(fixtures, manifest, rng, full)
            else:
                ok, detail = fn(fixtures, manifest, rng)
        except (ValueError, RuntimeError, KeyError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CriterionResult(number, name, ok, detail, time.perf_counter() - start))
    return results
