from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from licol.exactnum import (
    Matrix,
    as_rational,
    format_rational,
    nullspace,
    parse_rational,
    rank,
    rref,
    span_basis,
    span_equal,
)
from oracles import naive_rref

F = Fraction
small = st.fractions(min_value=-6, max_value=6, max_denominator=6)


@st.composite
def matrices(draw, max_rows=6, max_cols=5):
    rows = draw(st.integers(0, max_rows))
    cols = draw(st.integers(0, max_cols))
    # bias toward zeros so that rank deficiency is common
    entry = st.one_of(st.just(F(0)), small)
    return Matrix(rows, cols, draw(st.lists(entry, min_size=rows * cols, max_size=rows * cols)))


def test_rref_identity():
    m, piv = rref(Matrix.identity(2))
    assert m == Matrix.identity(2)
    assert piv == [0, 1]


def test_rref_zero():
    m, piv = rref(Matrix.zeros(3, 4))
    assert m == Matrix.zeros(3, 4)
    assert piv == []


def test_rref_rank_one():
    m, piv = rref(Matrix.from_rows([[2, 4], [1, 2]]))
    assert m.to_rows() == [[1, 2], [0, 0]]
    assert piv == [0]


def test_nullspace_examples():
    assert nullspace(Matrix.zeros(6, 4)) == [[int(i == j) for j in range(4)] for i in range(4)]
    assert nullspace(Matrix.identity(4)) == []
    ns = nullspace(Matrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0]]))
    assert ns == [[0, 0, 1, 0], [0, 0, 0, 1]]


def test_span_equal_examples():
    assert span_equal([[1, 0, 0]], [[2, 0, 0]])
    assert span_equal([], [[0, 0, 0]])
    assert span_equal([[1, 0, 0], [0, 1, 0]], [[1, 1, 0], [1, -1, 0]])
    assert not span_equal([[1, 0, 0]], [[0, 1, 0]])


def test_span_equal_rejects_mixed_lengths():
    with pytest.raises(ValueError):
        span_equal([[1, 0]], [[1, 0, 0]])


def test_rational_io():
    assert parse_rational(" -6/4 ") == F(-3, 2)
    assert parse_rational("7") == 7
    assert format_rational(F(-3, 2)) == "-3/2"
    assert format_rational(F(4, 2)) == "2"
    for bad in ("1.5", "a/b", "", "1/2/3"):
        with pytest.raises(ValueError):
            parse_rational(bad)
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_rational_canonical_form():
    x = F(6, -4)
    assert (x.numerator, x.denominator) == (-3, 2)
    assert F(0, 7).denominator == 1


def test_matrix_shape_checked():
    with pytest.raises(ValueError):
        Matrix(2, 2, [1, 2, 3])
    with pytest.raises(ValueError):
        Matrix.from_rows([[1, 2], [3]])


@given(matrices())
def test_rref_matches_textbook_elimination(m):
    r, piv = rref(m)
    expected, epiv = naive_rref(m.to_rows())
    assert piv == epiv
    assert r.to_rows() == expected


@given(matrices())
def test_rank_nullity(m):
    ns = nullspace(m)
    assert rank(m) + len(ns) == m.cols
    for v in ns:
        assert all(x == 0 for x in m.matvec(v))


@given(matrices())
def test_rref_idempotent(m):
    r, piv = rref(m)
    assert rref(r) == (r, piv)


@given(matrices())
def test_span_basis_is_reduced_and_spans(m):
    rows = m.to_rows()
    basis = span_basis(rows, m.cols)
    assert len(basis) == rank(m)
    if rows:
        assert span_equal(rows, basis) if basis else all(not any(r) for r in rows)


@given(small, small, small.filter(bool), small.filter(bool))
def test_addition_against_cross_multiplication(a, b, c, d):
    x, y = a / c, b / d
    num = a * d + b * c
    den = c * d
    assert x + y == num / den
    assert (x + y).denominator > 0
