import itertools
import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from gradedquiver.ktheory import (
    AbelianGroup,
    GradedGroupSpec,
    cartan_by_composition,
    cartan_by_paths,
    cartan_matrix,
    cone_invariant,
    k0_db,
    k0_inclusion,
    k0_perf,
    k0_singularity,
    motive_triviality,
)
from gradedquiver.snf import det, matmul, smith_normal_form


def determinantal_divisors(A):
    """gcd of all k x k minors, k = 1..rank; the brute-force oracle for invariant factors."""
    m, n = len(A), len(A[0])
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, det([[A[r][c] for c in cols] for r in rows]))
        if g == 0:
            break
        out.append(g)
    return out


def check_snf(A):
    snf = smith_normal_form(A)
    U, D, V = snf.U, snf.D, snf.V
    assert matmul(matmul(U, A), V) == [list(r) for r in D]
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = snf.diagonal
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    nz = snf.invariant_factors
    assert all(d > 0 for d in nz)
    assert diag[: len(nz)] == nz and all(d == 0 for d in diag[len(nz):])
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    return snf


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_invariants_and_oracles(A):
    snf = check_snf(A)
    dd = determinantal_divisors(A)
    expected = [dd[0]] + [b // a for a, b in zip(dd, dd[1:])] if dd else []
    assert snf.invariant_factors == expected
    ref = sympy_snf(sympy.Matrix(A), domain=sympy.ZZ)
    ref_diag = [abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i] != 0]
    assert snf.invariant_factors == ref_diag


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_sympy_and_snf(A):
    d = det(A)
    assert d == sympy.Matrix(A).det()
    snf = smith_normal_form(A)
    prod = math.prod(snf.diagonal)
    assert abs(d) == prod


def test_snf_examples():
    I3 = [[int(i == j) for j in range(3)] for i in range(3)]
    snf = smith_normal_form(I3)
    assert [list(r) for r in snf.U] == I3 == [list(r) for r in snf.V] == [list(r) for r in snf.D]
    assert smith_normal_form([[1, 1], [1, 1]]).diagonal == [1, 0]
    assert smith_normal_form([[2]]).diagonal == [2]


def test_snf_deterministic():
    A = [[4, 6, -2], [3, 9, 12], [0, 5, 7]]
    assert smith_normal_form(A) == smith_normal_form([row[:] for row in A])


def test_cartan_examples(dual, a2, semisimple):
    assert cartan_matrix(dual).rows() == [[2]]
    assert cartan_matrix(a2).rows() == [[1, 1], [0, 1]]
    assert cartan_matrix(semisimple).rows() == [[1, 0], [0, 1]]


def test_cartan_routes_agree(corpus_alg):
    assert cartan_by_paths(corpus_alg) == cartan_by_composition(corpus_alg)
    C = cartan_matrix(corpus_alg)
    assert C.total() == corpus_alg.dim
    assert all(x >= 0 for r in C.rows() for x in r)
    assert all(C.rows()[i][i] >= 1 for i in range(C.n))


def test_k0_bases(a2, dual):
    assert k0_perf(a2).rank == k0_db(a2).rank == 2
    assert k0_perf(a2).basis == ("[P1]", "[P2]")
    assert k0_db(a2).basis == ("[S1]", "[S2]")
    assert k0_inclusion(a2)[0] == [1, 1]  # [P1] = [S1] + [S2]
    assert k0_inclusion(dual) == [[2]]


def test_k0_singularity_examples():
    assert str(k0_singularity([[2]])) == "Z/2"
    assert k0_singularity([[1, 1], [0, 1]]).is_zero()
    assert str(k0_singularity([[1, 1], [1, 1]])) == "Z"


def test_k0_singularity_of_two_by_enumeration():
    # Z / 2Z by listing residues
    assert k0_singularity([[2]]).order == len({x % 2 for x in range(-10, 10)})


def test_motive_verdicts():
    assert motive_triviality([[1, 1], [0, 1]]).trivial
    assert str(motive_triviality([[1, 1], [0, 1]])).startswith("trivial motive (det = 1)")
    v = motive_triviality([[2]])
    assert not v.trivial and v.det == 2 and str(v.k0_singularity) == "Z/2"
    v = motive_triviality([[1, 1], [1, 1]])
    assert not v.trivial and v.det == 0 and str(v.k0_singularity) == "Z"
    assert motive_triviality([[0, 1], [1, 0]]).trivial  # det = -1


def test_abelian_group_canonical_form():
    assert AbelianGroup.from_cyclic([2, 3]) == AbelianGroup(0, (6,))
    assert AbelianGroup.from_cyclic([4, 6, 0, 1]) == AbelianGroup(1, (2, 12))
    assert str(AbelianGroup(2, (2,))) == "Z^2 + Z/2"
    assert str(AbelianGroup()) == "0"
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 6))


@given(st.lists(st.integers(0, 30), max_size=5))
def test_canonical_form_preserves_order(orders):
    G = AbelianGroup.from_cyclic(orders)
    assert G.free_rank == orders.count(0)
    finite = [m for m in orders if m]
    if not G.free_rank:
        assert G.order == math.prod(finite)
    assert AbelianGroup.from_cyclic(G.cyclic_orders()) == G


def test_cone_examples():
    Z, Z2 = AbelianGroup(1), AbelianGroup(0, (2,))
    r = cone_invariant([[2]], GradedGroupSpec({0: Z}))
    assert r.parts[0] == (Z2, AbelianGroup())
    assert not r.trivial
    r = cone_invariant([[2]], GradedGroupSpec({0: Z2}))
    assert r.parts[0][0] == Z2
    assert r.parts[1][1] == Z2


spec_groups = st.builds(
    lambda free, tors: AbelianGroup.from_cyclic([0] * free + tors),
    st.integers(0, 2),
    st.lists(st.integers(2, 12), max_size=2),
)
specs = st.dictionaries(st.integers(-2, 4), spec_groups, max_size=3).map(GradedGroupSpec)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)), specs)
def test_cone_zero_iff_unimodular(C, spec):
    r = cone_invariant(C, spec)
    if abs(det(C)) == 1:
        assert r.trivial
    # {0: Z} detects every non-unimodular C
    k0 = cone_invariant(C, GradedGroupSpec.k0_only())
    assert k0.parts[0][0] == k0_singularity(C)
    assert k0.trivial == (abs(det(C)) == 1)


def test_group_spec_round_trip():
    tree = {"degrees": [{"degree": 0, "free_rank": 1, "torsion": []}, {"degree": 3, "free_rank": 0, "torsion": [8, 2]}]}
    spec = GradedGroupSpec.from_tree(tree)
    assert spec.at(3) == AbelianGroup(0, (2, 8))
    assert GradedGroupSpec.from_tree(spec.to_tree()) == spec
    with pytest.raises(ValueError):
        GradedGroupSpec.from_tree({"degrees": [{"degree": 0}, {"degree": 0}]})
