from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from gradedquiver.modules import direct_sum, projective, radical, simple, twist
from gradedquiver.resolutions import (
    HypothesisError,
    ext_graded,
    global_dimension_probe,
    minimal_graded_resolution,
    verify_resolution_nonnegativity,
)
from gradedquiver.ungraded import betti_ungraded, ext_ungraded

from conftest import CORPUS_NAMES, corpus_algebra


def test_projective_resolution_has_length_zero(corpus_alg):
    for v in range(corpus_alg.n):
        res = minimal_graded_resolution(projective(corpus_alg, v), 5)
        assert res.length == 0 and res.terminated
        assert res.terms == [[(v, 0)]]


def test_dual_numbers_resolution(dual):
    res = minimal_graded_resolution(simple(dual, 0), 3)
    assert res.terms == [[(0, -i)] for i in range(4)]
    assert not res.terminated


def test_a2_simple_resolution(a2):
    res = minimal_graded_resolution(simple(a2, 0), 5)
    assert res.terms == [[(0, 0)], [(1, -1)]]
    assert res.terminated and res.length == 1


def test_truncated_cubic_generator_degrees(cubic):
    rep = verify_resolution_nonnegativity(simple(cubic, 0), 6)
    assert rep.passed
    assert [d for row in rep.generator_degrees for d in row] == [0, 1, 3, 4, 6, 7, 9]


def test_nonnegativity_precondition(dual):
    with pytest.raises(HypothesisError):
        verify_resolution_nonnegativity(twist(simple(dual, 0), 1), 6)


def test_resolution_certificates(corpus_alg):
    for v in range(corpus_alg.n):
        res = minimal_graded_resolution(simple(corpus_alg, v), 6)
        assert res.is_complex() and res.is_exact() and res.is_minimal()


def test_ext_from_projective_source(corpus_alg):
    for v in range(corpus_alg.n):
        P = projective(corpus_alg, v)
        for w in range(corpus_alg.n):
            table = ext_graded(P, simple(corpus_alg, w), 3)
            assert all(d == 0 for (i, _), d in table.entries.items() if i >= 1)
            assert table.total(0) == int(v == w)
            assert ext_ungraded(P, simple(corpus_alg, w), 3) == [int(v == w), 0, 0, 0]


def test_dual_numbers_ext(dual):
    S = simple(dual, 0)
    table = ext_graded(S, S, 5)
    assert table.nonzero() == {(i, -i): 1 for i in range(6)}
    assert ext_ungraded(S, S, 5) == [1] * 6


def test_cubic_ext_matches_ungraded(cubic):
    S = simple(cubic, 0)
    table = ext_graded(S, S, 4)
    assert table.nonzero() == {(0, 0): 1, (1, -1): 1, (2, -3): 1, (3, -4): 1, (4, -6): 1}
    assert [table.total(i) for i in range(5)] == ext_ungraded(S, S, 4)


def test_semisimple_ext(semisimple):
    for a in range(2):
        for b in range(2):
            assert ext_ungraded(simple(semisimple, a), simple(semisimple, b), 3) == [int(a == b), 0, 0, 0]


def test_global_dimension_probe(a2, dual, semisimple):
    assert str(global_dimension_probe(a2, 4)) == "FiniteValue(1)"
    for d in (1, 3, 6):
        assert str(global_dimension_probe(dual, d)) == f"ExceedsBound({d})"
    assert global_dimension_probe(semisimple, 2).value == 0


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_ext_one_and_two_read_off_presentation(name):
    """Ext^1(S_i, S_j(-d)) counts arrows i -> j of degree d; Ext^2 counts minimal relations."""
    alg = corpus_algebra(name)
    q = alg.quiver
    arrows = Counter((a.source, a.target, a.degree) for a in q.arrows)
    rels = Counter()
    for rel in alg.presentation.relations:
        _, word = rel.terms[0]
        s, t = q.check_path(word)
        rels[(s, t, q.path_degree(word))] += 1
    for i in range(alg.n):
        table = ext_graded(simple(alg, i), direct_sum(*(simple(alg, j) for j in range(alg.n))), 2)
        for j in range(alg.n):
            t = ext_graded(simple(alg, i), simple(alg, j), 2, resolution=None)
            for d in range(0, 8):
                assert t.entries.get((1, -d), 0) == arrows[(i, j, d)]
                assert t.entries.get((2, -d), 0) == rels[(i, j, d)]
        assert table.total(1) == sum(c for (s, _, _), c in arrows.items() if s == i)


@st.composite
def module_pairs(draw):
    alg = corpus_algebra(draw(st.sampled_from(CORPUS_NAMES)))

    def one():
        kind = draw(st.sampled_from("SPR"))
        v = draw(st.integers(0, alg.n - 1))
        M = simple(alg, v) if kind == "S" else projective(alg, v)
        return radical(M) if kind == "R" else M

    return alg, one(), one(), draw(st.integers(-3, 3))


@settings(max_examples=40, deadline=None)
@given(module_pairs())
def test_ext_twist_equivariance(data):
    _, M, N, t = data
    if M.is_zero():
        return
    a = ext_graded(M, N, 3, (-12, 4))
    b = ext_graded(twist(M, -t), N, 3, (-12 - t, 4 - t))
    for (i, j), d in a.entries.items():
        assert b.entries[(i, j - t)] == d


@settings(max_examples=40, deadline=None)
@given(module_pairs())
def test_graded_and_ungraded_betti_agree(data):
    _, M, _, _ = data
    res = minimal_graded_resolution(M, 4)
    assert res.is_complex() and res.is_exact() and res.is_minimal()
    assert [res.betti(i) for i in range(res.length + 1)] == betti_ungraded(M, res.length)
