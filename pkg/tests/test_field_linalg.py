from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gradedquiver.field import FieldSpec, Fp
from gradedquiver.linalg import nullspace, rank, rref


def test_prime_field_reduces_input():
    F = FieldSpec(5)
    assert F(7) == 2
    assert F("1/2") == 3  # 2 * 3 = 6 = 1 mod 5
    assert F(-1) == 4
    assert F.label == "F5"


def test_rationals():
    Q = FieldSpec()
    assert Q("-1/2") == Fraction(-1, 2)
    assert Q.to_text(Q("6/4")) == "3/2"
    assert Q.label == "Q"


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        FieldSpec(6)


def test_denominator_divisible_by_p():
    with pytest.raises(ZeroDivisionError):
        FieldSpec(3)("1/3")


def test_parse_labels():
    assert FieldSpec.parse("Q") == FieldSpec()
    assert FieldSpec.parse("F7") == FieldSpec(7)
    with pytest.raises(ValueError):
        FieldSpec.parse("R")


@given(st.integers(1, 12), st.integers(-50, 50), st.integers(-50, 50))
def test_fp_field_axioms(k, a, b):
    p = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37][k - 1]
    x, y = Fp(a, p), Fp(b, p)
    assert (x + y) - y == x
    assert x * y == y * x
    if y:
        assert (x / y) * y == x
        assert y * y.inverse() == 1


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def _sparse(rows, F):
    return [{j: F(x) for j, x in enumerate(r) if x} for r in rows]


@settings(max_examples=80)
@given(matrices)
def test_rank_matches_sympy_over_q(rows):
    assert rank(_sparse(rows, FieldSpec())) == sympy.Matrix(rows).rank()


@settings(max_examples=80)
@given(matrices)
def test_nullspace_is_kernel(rows):
    F = FieldSpec(7)
    sparse = _sparse(rows, F)
    ncols = len(rows[0])
    basis, free = nullspace(sparse, ncols, F.one)
    assert len(basis) == ncols - rank(sparse)
    assert len(free) == len(basis)
    for v, c in zip(basis, free):
        assert v[c] == 1
        for r in sparse:
            assert sum((r.get(j, 0) * x for j, x in v.items()), F.zero) == 0


def test_rref_pivots_leftmost():
    Q = FieldSpec()
    red, piv = rref(_sparse([[0, 2, 4], [0, 1, 3]], Q))
    assert piv == [1, 2]
    assert red[0] == {1: 1}
