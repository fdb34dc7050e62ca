import pytest
from hypothesis import given, settings, strategies as st

from gradedquiver.linalg import in_span
from gradedquiver.modules import (
    GradedModule,
    composition_multiplicities,
    direct_sum,
    hom_graded,
    kernel,
    module_from_selector,
    module_from_tree,
    module_to_tree,
    projective,
    projective_cover,
    radical,
    radical_blocks,
    semisimple_top,
    simple,
    top,
    twist,
    zero_module,
)
from gradedquiver.ungraded import forget_grading, hom_dim

from conftest import CORPUS_NAMES, corpus_algebra


def same_module(M, N):
    return M.basis == N.basis and [dict(a) for a in M.actions] == [dict(a) for a in N.actions]


def test_simple_dual(dual):
    S = simple(dual, 0)
    assert S.basis == ((0, 0),)
    assert not any(S.actions)


def test_simple_a2(a2):
    assert simple(a2, 0).basis == ((0, 0),)
    with pytest.raises((IndexError, ValueError)):
        simple(a2, 2)


def test_semisimple_simple_is_projective(semisimple):
    assert same_module(simple(semisimple, 1), projective(semisimple, 1))


def test_projectives(dual, a2):
    assert projective(dual, 0).basis == ((0, 0), (0, 1))
    assert projective(a2, 0).basis == ((0, 0), (1, 1))
    assert same_module(projective(a2, 1), simple(a2, 1))


def test_twist_laws(dual):
    P = projective(dual, 0)
    assert same_module(twist(P, 0), P)
    assert same_module(twist(twist(P, 2), -5), twist(P, -3))
    assert twist(simple(dual, 0), -1).basis == ((0, 1),)


def test_top_and_radical(corpus_alg):
    for i in range(corpus_alg.n):
        P = projective(corpus_alg, i)
        assert top(P).basis == simple(corpus_alg, i).basis
        assert radical(simple(corpus_alg, i)).is_zero()


def test_radical_of_cubic_projective(cubic):
    R = radical(projective(cubic, 0))
    assert R.basis == ((0, 1), (0, 2))


def test_cover_of_simple_and_projective(corpus_alg):
    for i in range(corpus_alg.n):
        P, pi = projective_cover(simple(corpus_alg, i))
        assert same_module(P, projective(corpus_alg, i))
        assert pi.rank() == 1
        Q = projective(corpus_alg, i)
        P2, pi2 = projective_cover(Q)
        assert same_module(P2, Q)
        assert pi2.rank() == Q.dim


def test_cover_of_syzygy_dual(dual):
    R = radical(projective(dual, 0))
    assert R.basis == ((0, 1),)
    P, _ = projective_cover(R)
    assert same_module(P, twist(projective(dual, 0), -1))


def test_cover_of_zero(dual):
    P, pi = projective_cover(zero_module(dual))
    assert P.is_zero() and pi.is_zero()


def test_composition_multiplicities(a2, cubic):
    assert composition_multiplicities(simple(a2, 1)) == (0, 1)
    assert composition_multiplicities(projective(a2, 0)) == (1, 1)
    assert composition_multiplicities(projective(cubic, 0)) == (3,)


def test_hom_examples(a2, dual):
    assert hom_graded(simple(a2, 0), simple(a2, 1))[0] == 0
    assert hom_graded(projective(dual, 0), simple(dual, 0))[0] == 1


def test_formality_witness(corpus_alg):
    S = semisimple_top(corpus_alg)
    dim, maps = hom_graded(S, S)
    assert dim == corpus_alg.n == len(maps)


def test_hom_algebra_mismatch(dual, a2):
    with pytest.raises(ValueError):
        hom_graded(simple(dual, 0), simple(a2, 0))


def test_relations_must_act_as_zero(dual):
    # x acting as the identity-like shift on a 2-dim module with x^2 != 0 fails
    with pytest.raises(ValueError):
        GradedModule(dual, ((0, 0), (0, 1), (0, 2)), ({0: {1: dual.field.one}, 1: {2: dual.field.one}},))


def test_action_must_raise_degree(dual):
    with pytest.raises(ValueError):
        GradedModule(dual, ((0, 0), (0, 0)), ({0: {1: dual.field.one}},))


def test_selector_parsing(a2):
    assert same_module(module_from_selector(a2, "S1(-2)"), twist(simple(a2, 0), -2))
    assert same_module(module_from_selector(a2, "P1"), projective(a2, 0))
    assert module_from_selector(a2, "top").dim == 2
    with pytest.raises(ValueError):
        module_from_selector(a2, "X1")


# -- properties over random modules ---------------------------------------

@st.composite
def modules(draw):
    name = draw(st.sampled_from(CORPUS_NAMES))
    alg = corpus_algebra(name)
    parts = draw(
        st.lists(
            st.tuples(st.sampled_from("SPR"), st.integers(0, alg.n - 1), st.integers(-3, 3)),
            min_size=1,
            max_size=3,
        )
    )
    mods = []
    for kind, v, t in parts:
        M = simple(alg, v) if kind == "S" else projective(alg, v)
        if kind == "R":
            M = radical(M)
        mods.append(twist(M, t))
    return alg, mods


@settings(max_examples=60, deadline=None)
@given(modules())
def test_composition_additive_and_twist_invariant(data):
    alg, mods = data
    M = direct_sum(*mods)
    total = composition_multiplicities(M)
    assert sum(total) == M.dim
    assert total == tuple(map(sum, zip(*(composition_multiplicities(m) for m in mods))))
    assert composition_multiplicities(twist(M, 4)) == total


@settings(max_examples=60, deadline=None)
@given(modules())
def test_cover_is_minimal(data):
    _, mods = data
    M = direct_sum(*mods)
    P, pi = projective_cover(M)
    assert pi.rank() == M.dim
    assert top(P).basis == top(M).basis
    K, inc = kernel(pi)
    assert K.dim == P.dim - M.dim
    rad = radical_blocks(P)
    for i in range(K.dim):
        x = inc.matrix[i]
        red, piv = rad.get(P.basis[next(iter(x))], ([], []))
        assert in_span(x, red, piv)


@settings(max_examples=40, deadline=None)
@given(modules(), modules(), st.integers(-3, 3))
def test_hom_twist_equivariance(d1, d2, j):
    alg, m1 = d1
    if d2[0] is not alg:
        return
    M, N = direct_sum(*m1), direct_sum(*d2[1])
    assert hom_graded(M, twist(N, j))[0] == hom_graded(twist(M, -j), N)[0]


@settings(max_examples=40, deadline=None)
@given(modules(), modules())
def test_graded_homs_sum_to_ungraded(d1, d2):
    alg, m1 = d1
    if d2[0] is not alg:
        return
    M, N = direct_sum(*m1), direct_sum(*d2[1])
    lo = min(N.degrees(), default=0) - max(M.degrees(), default=0)
    hi = max(N.degrees(), default=0) - min(M.degrees(), default=0)
    graded = sum(hom_graded(M, twist(N, j))[0] for j in range(lo - 1, hi + 2))
    assert graded == hom_dim(forget_grading(M), forget_grading(N))


@settings(max_examples=40, deadline=None)
@given(modules())
def test_module_tree_round_trip(data):
    alg, mods = data
    M = direct_sum(*mods)
    assert same_module(module_from_tree(alg, module_to_tree(M)), M)
