import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from treecells.algebra import Algebra
from treecells.search import CandidateRep, cell_candidate
from treecells.twocat import IDENTITY, OneMorphism, cell_rep_matrices, cells, compose, f_label, matrix_of
from treecells.tree import path_instance

import oracles
from conftest import EDGE, PATH3, STAR, STAR_EMPTY, random_instances

INSTANCES = [EDGE, PATH3, STAR, STAR_EMPTY, path_instance(5)] + random_instances(41, 4, 5)


def test_compose_rule():
    alg = Algebra(PATH3)
    n = 3
    f = compose(alg, OneMorphism.F(n, 1, 2), OneMorphism.F(n, 2, 3))
    assert f.summands() == {f_label(1, 3): 2}
    assert compose(alg, OneMorphism.F(n, 1, 1), OneMorphism.F(n, 3, 2)).summands() == {}
    one = OneMorphism.identity(n)
    assert compose(alg, one, one).summands() == {IDENTITY: 1}


def test_negative_multiplicity_rejected():
    with pytest.raises(ValueError):
        OneMorphism(-1, [[0]])


def _random_morphism(rng, n):
    return OneMorphism(rng.randint(0, 2), [[rng.randint(0, 2) for _ in range(n)] for _ in range(n)])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_compose_associative_and_unital(seed):
    rng = random.Random(seed)
    alg = Algebra(STAR)
    f, g, h = (_random_morphism(rng, 4) for _ in range(3))
    assert compose(alg, compose(alg, f, g), h) == compose(alg, f, compose(alg, g, h))
    one = OneMorphism.identity(4)
    assert compose(alg, one, f) == f == compose(alg, f, one)


@pytest.mark.parametrize("inst", INSTANCES, ids=repr)
def test_cells_against_closure_oracle(inst):
    cs = cells(Algebra(inst))
    left, two = oracles.green_cells(inst.n, inst.edges, inst.special)

    def norm(classes):
        return {frozenset(classes_) for classes_ in classes}

    def relabel(cls):
        return frozenset(IDENTITY if x == "1" else f_label(*x) for x in cls)

    assert norm(cs.left_cells) == {relabel(c) for c in left}
    assert norm(cs.two_sided_cells) == {relabel(c) for c in two}
    assert len(cs.two_sided_cells) == 2
    assert len(cs.left_cells) == len(cs.right_cells) == inst.n + 1


def test_left_cell_shape():
    cs = cells(Algebra(PATH3))
    assert [f_label(1, 2), f_label(2, 2), f_label(3, 2)] in cs.left_cells


@pytest.mark.parametrize("inst", INSTANCES, ids=repr)
def test_cell_matrices_multiply(inst):
    alg = Algebra(inst)
    h = alg.cartan_matrix()
    mats = cell_rep_matrices(alg)
    for (i, j), (k, l) in itertools.product(mats, repeat=2):
        assert np.array_equal(mats[i, j] @ mats[k, l], h[j - 1, k - 1] * mats[i, l])
    for i in inst.vertices:
        assert np.trace(mats[i, i]) == (1 if i in inst.special else 2)


def test_cell_matrices_edge():
    mats = cell_rep_matrices(Algebra(EDGE))
    assert mats[1, 1].tolist() == [[2, 1], [0, 0]]
    assert mats[2, 1].tolist() == [[0, 0], [2, 1]]
    with pytest.raises(ValueError):
        cell_rep_matrices(Algebra(EDGE), 3)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_matrix_of_is_multiplicative(seed):
    rng = random.Random(seed)
    alg = Algebra(PATH3)
    rep = cell_candidate(alg)
    f, g = _random_morphism(rng, 3), _random_morphism(rng, 3)
    assert np.array_equal(matrix_of(alg, compose(alg, f, g), rep), matrix_of(alg, f, rep) @ matrix_of(alg, g, rep))


def test_matrix_of_cell_rep_matches_cell_matrices():
    alg = Algebra(STAR)
    rep = cell_candidate(alg)
    mats = cell_rep_matrices(alg)
    for (i, j), m in mats.items():
        assert np.array_equal(matrix_of(alg, OneMorphism.F(4, i, j), rep), m)


def test_matrix_of_zero_rep():
    alg = Algebra(EDGE)
    zero = CandidateRep(1, [[1]], np.zeros((2, 2, 1, 1)))
    assert matrix_of(alg, OneMorphism.identity(2) + OneMorphism.F(2, 1, 2), zero).tolist() == [[1]]
