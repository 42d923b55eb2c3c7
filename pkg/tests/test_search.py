import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from treecells.algebra import Algebra
from treecells.flor import flor_decompose
from treecells.search import (BudgetExceeded, CandidateRep, SearchBounds, canonical_form, cell_candidate,
                              check_candidate, classify, run_search, search, support_types, xy_sets,
                              zero_candidate)
from treecells.tree import TreeInstance

import oracles
from conftest import EDGE, EDGE_FULL, PATH3, STAR, STAR_EMPTY


def test_cell_rep_edge_passes_every_check():
    alg = Algebra(EDGE)
    rep = CandidateRep(2, [[2, 1], [1, 1]], cell_candidate(alg).m)
    report = check_candidate(alg, rep)
    assert report.violations == []
    assert report.bijection == [0, 1]


def test_zero_rep_checks():
    report = check_candidate(Algebra(EDGE), zero_candidate(2))
    assert report.checks["composition"] and report.checks["transitivity"]
    assert not report.checks["faithful"]


def test_injected_multiplicity_breaks_composition():
    alg = Algebra(EDGE)
    rep = cell_candidate(alg)
    rep.m[0, 0, 0, 0] = 2
    assert not check_candidate(alg, rep).checks["composition"]


def test_wrong_shape_rejected():
    with pytest.raises(ValueError):
        CandidateRep(2, np.eye(2), np.zeros((2, 2, 3, 3)))
    with pytest.raises(ValueError):
        check_candidate(Algebra(PATH3), cell_candidate(Algebra(EDGE)))


def test_xy_sets_cell_rep():
    xy = xy_sets(cell_candidate(Algebra(EDGE)))
    assert xy.X_reduced == [frozenset({0}), frozenset({1})]
    assert xy.xy_equal and xy.union_full
    assert xy.as_dict()["X"] == [[1], [2]]


def test_xy_sets_zero_rep():
    xy = xy_sets(zero_candidate(3))
    assert xy.x_independent and xy.y_independent
    assert all(not x for x in xy.X_reduced)


def test_canonical_form_examples():
    alg = Algebra(EDGE)
    cell = cell_candidate(alg)
    swapped = cell.permuted([1, 0])
    assert swapped != cell
    assert canonical_form(swapped) == canonical_form(cell)
    z = zero_candidate(2)
    assert canonical_form(z) == z


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_canonical_form_is_orbit_invariant(seed):
    rng = np.random.default_rng(seed)
    r = int(rng.integers(1, 4))
    rep = CandidateRep(r, rng.integers(0, 3, (r, r)), rng.integers(0, 3, (2, 2, r, r)))
    c = canonical_form(rep)
    assert canonical_form(c) == c
    perm = list(rng.permutation(r))
    assert canonical_form(rep.permuted(perm)) == c


def test_canonical_form_separates_orbits():
    # brute force over small r = 2 candidates: equal canonical forms iff same orbit
    rng = np.random.default_rng(5)
    reps = [CandidateRep(2, rng.integers(0, 2, (2, 2)), rng.integers(0, 2, (1, 1, 2, 2))) for _ in range(60)]
    for a, b in itertools.combinations(reps, 2):
        same_orbit = oracles.as_key(b.cartan_b, b.m) in oracles.orbit(a.cartan_b, a.m)
        assert (canonical_form(a) == canonical_form(b)) == same_orbit


def test_search_edge_exactly_cell():
    alg = Algebra(EDGE)
    sols = search(alg, SearchBounds(3, 2), require_faithful=True, require_diag_dichotomy=True)
    assert sols == [canonical_form(cell_candidate(alg))]


def test_search_edge_unfaithful_adds_zero():
    alg = Algebra(EDGE)
    sols = search(alg, SearchBounds(3, 2), require_faithful=False, require_diag_dichotomy=True)
    assert sols == [zero_candidate(2), canonical_form(cell_candidate(alg))]


def test_search_path_exactly_cell():
    alg = Algebra(PATH3)
    sols = search(alg, SearchBounds(4, 2), require_faithful=True, require_diag_dichotomy=True)
    assert sols == [canonical_form(cell_candidate(alg))]


@pytest.mark.parametrize("inst", [EDGE, EDGE_FULL, PATH3, STAR, TreeInstance(3, ((1, 2), (2, 3)))], ids=repr)
@pytest.mark.parametrize("xy", [True, False])
@pytest.mark.parametrize("dichotomy", [True, False])
def test_search_matches_brute_force(inst, xy, dichotomy):
    alg = Algebra(inst)
    h = alg.cartan_matrix()
    raw = [x for r in (1, 2) for x in oracles.brute_force_reps(h, r, 2)]
    want = set()
    for w, m in raw:
        flags = oracles.rep_flags(h, w, m)
        if flags["faithful"] and (flags["dichotomy"] or not dichotomy) and (flags["xy"] or not xy):
            want.add(oracles.as_key(w, m))
    got = set()
    for rep in search(alg, SearchBounds(2, 2), True, dichotomy, xy):
        got |= oracles.orbit(rep.cartan_b, rep.m)
    assert got == want


def test_unfaithful_brute_force_only_zero_at_rank_one():
    h = Algebra(PATH3).cartan_matrix()
    for r in (1, 2):
        for w, m in oracles.brute_force_reps(h, r, 2):
            if not m.any():
                assert r == 1


@pytest.mark.slow
def test_search_matches_brute_force_rank_three_path():
    alg = Algebra(PATH3)
    h = alg.cartan_matrix()
    raw = oracles.brute_force_reps(h, 3, 1)
    want = {oracles.as_key(w, m) for w, m in raw if m.any()}
    got = set()
    for rep in search(alg, SearchBounds(3, 1), True, False, False):
        if rep.r == 3:
            got |= oracles.orbit(rep.cartan_b, rep.m)
    assert got == want and len(want) == 30


@pytest.mark.parametrize("inst", [EDGE, PATH3], ids=repr)
def test_search_results_pass_checker(inst):
    alg = Algebra(inst)
    for rep in search(alg, SearchBounds(alg.n + 1, 2), False, False, True):
        report = check_candidate(alg, rep)
        assert report.mandatory_ok
        if rep.is_faithful():
            xy = xy_sets(rep)
            assert xy.union_full and xy.xy_equal
            assert report.checks["zero_row_col_symmetry"]
            for i in range(1, alg.n + 1):
                f = rep.f_matrix(i, i)
                k = alg.hom_dim(i, i)
                assert np.array_equal(f @ f, k * f)
                flor_decompose(f)


@pytest.mark.parametrize("inst", [EDGE, PATH3], ids=repr)
def test_paper_constraints_force_cell_cartan(inst):
    alg = Algebra(inst)
    for rep in search(alg, SearchBounds(alg.n + 1, 2), True, True, True):
        checks = check_candidate(alg, rep).checks
        if checks["single_x"] and checks["disjoint_x"]:
            assert rep.r == alg.n and checks["cartan_equal"]


def test_support_types():
    h = Algebra(PATH3).cartan_matrix()
    types = support_types(h)
    assert ((0,), (0,)) in types and ((0, 1), (0, 1)) in types
    assert ((0, 2), (0, 2)) not in types
    assert len(support_types(h, xy=False)) > len(types)


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        search(Algebra(PATH3), SearchBounds(4, 2, node_budget=50), True, True)


@pytest.mark.parametrize("kwargs", [dict(r_max=0), dict(r_max=2, entry_cap=0), dict(r_max=2, node_budget=0)])
def test_bad_bounds(kwargs):
    with pytest.raises(ValueError):
        SearchBounds(**kwargs)


@pytest.mark.parametrize("inst", [EDGE, PATH3], ids=repr)
def test_classify_confirms(inst):
    alg = Algebra(inst)
    verdict = classify(alg)
    assert verdict.confirmed
    assert verdict.unfaithful_solutions == [zero_candidate(alg.n)]
    assert verdict.note is None
    for rep, violated in verdict.extras:
        assert violated and rep != canonical_form(cell_candidate(alg))
    doc = verdict.as_dict(alg)
    assert doc["confirmed"] is True and len(doc["extras"]) == len(verdict.extras)


def test_classify_self_injective_note():
    alg = Algebra(TreeInstance(3, ((1, 2), (2, 3))))
    verdict = classify(alg, SearchBounds(3, 2))
    assert verdict.note and "prior work" in verdict.note
