from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bautq.linalg import DimensionMismatch, RatMatrix, in_span, independent_subset, kernel_basis, matvec, rank, rref


def test_rref_identity():
    r, piv, red = rref(RatMatrix.identity(2))
    assert (r, piv) == (2, [0, 1])
    assert red == RatMatrix.identity(2)


def test_rref_proportional_rows():
    r, piv, red = rref(RatMatrix.from_rows([[1, 2], [2, 4]]))
    assert (r, piv) == (1, [0])
    assert red.to_rows() == [[1, 2], [0, 0]]


def test_rref_swap():
    r, _, red = rref(RatMatrix.from_rows([[0, 1], [1, 0]]))
    assert r == 2 and red == RatMatrix.identity(2)


def test_kernel_examples():
    assert kernel_basis(RatMatrix.identity(3)) == []
    (v,) = kernel_basis(RatMatrix.from_rows([[1, 2], [2, 4]]))
    assert v[0] / v[1] == -2
    ker = kernel_basis(RatMatrix.zeros(3, 3))
    assert sorted(map(tuple, ker)) == sorted([(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_in_span_examples():
    assert in_span([[1, 0]], [3, 0]) == [3]
    assert in_span([[1, 0]], [0, 1]) is None
    assert in_span([[1, 1], [1, -1]], [5, 1]) == [3, 2]


def test_in_span_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        in_span([[1, 0]], [1, 0, 0])


def test_floats_rejected():
    with pytest.raises(TypeError):
        RatMatrix.from_rows([[0.5, 1]])


def test_shape_checked():
    with pytest.raises(ValueError):
        RatMatrix(2, 2, (F(1),) * 3)


def test_independent_subset_respects_start():
    vecs = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]]
    assert independent_subset(vecs, [[1, 1, 0]]) == [0, 3]


small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def matrices(draw, max_dim=5):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    entries = draw(st.lists(st.one_of(st.just(F(0)), small), min_size=r * c, max_size=r * c))
    return RatMatrix(r, c, tuple(entries))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    for v in ker:
        assert all(x == 0 for x in matvec(m, v))


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rref_idempotent_and_matches_sympy(m):
    r, piv, red = rref(m)
    assert rref(red)[2] == red
    sm = sympy.Matrix(m.rows, m.cols, [sympy.Rational(x.numerator, x.denominator) for x in m.entries])
    sred, spiv = sm.rref()
    assert list(spiv) == piv
    assert [[F(int(x.p), int(x.q)) for x in sred.row(i)] for i in range(m.rows)] == red.to_rows()


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_in_span_solution_is_exact(m, coeffs):
    cols = [m.column(j) for j in range(m.cols)]
    target = [sum((c * col[i] for c, col in zip(coeffs, cols)), F(0)) for i in range(m.rows)]
    sol = in_span(cols, target)
    assert sol is not None
    assert [sum((c * col[i] for c, col in zip(sol, cols)), F(0)) for i in range(m.rows)] == target
