from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from strategies import matrices
from opsmith.ratlin import (
    InconsistentSystem,
    Matrix,
    cokernel_projection,
    format_rational,
    image_basis,
    inverse,
    kernel_basis,
    kron,
    parse_rational,
    rank,
    row_reduce,
    solve,
)


def test_row_reduce_identity():
    rref, rk, piv = row_reduce(Matrix.identity(2))
    assert rref == Matrix.identity(2)
    assert (rk, piv) == (2, [0, 1])


def test_row_reduce_rank_one():
    rref, rk, piv = row_reduce(Matrix.from_rows([[1, 2], [2, 4]]))
    assert rref == Matrix.from_rows([[1, 2], [0, 0]])
    assert (rk, piv) == (1, [0])


def test_row_reduce_empty_rows():
    rref, rk, piv = row_reduce(Matrix.zeros(0, 3))
    assert rref.shape == (0, 3)
    assert (rk, piv) == (0, [])


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(3)).cols == 0
    k = kernel_basis(Matrix.from_rows([[1, 2], [2, 4]]))
    assert k == Matrix.from_rows([[-2], [1]])
    assert kernel_basis(Matrix.zeros(2, 2)) == Matrix.identity(2)


def test_cokernel_examples():
    assert cokernel_projection(Matrix.identity(2))[1] == 0
    m = Matrix.from_rows([[1], [2]])
    proj, dim = cokernel_projection(m)
    assert dim == 1
    assert (proj @ m).is_zero()
    assert rank(proj) == 1
    proj, dim = cokernel_projection(Matrix.zeros(3, 0))
    assert dim == 3 and proj == Matrix.identity(3)


def test_rationals_round_trip():
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(4) == "4"
    assert parse_rational("6/4") == Fraction(3, 2)
    assert parse_rational("5") == 5
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_singular_inverse_raises():
    with pytest.raises(InconsistentSystem):
        inverse(Matrix.from_rows([[1, 1], [1, 1]]))


def test_solve_inconsistent():
    with pytest.raises(InconsistentSystem):
        solve(Matrix.from_rows([[0], [0]]), Matrix.from_rows([[1], [0]]))


@given(matrices())
def test_rank_matches_oracle(m):
    assert rank(m) == oracle.rank(m)


@given(matrices())
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert rank(m) + k.cols == m.cols
    assert (m @ k).is_zero()
    assert rank(k) == k.cols


@given(matrices())
def test_cokernel_projection_properties(m):
    proj, dim = cokernel_projection(m)
    assert dim == m.rows - rank(m)
    assert proj.shape == (dim, m.rows)
    assert (proj @ m).is_zero()
    assert rank(proj) == dim


@given(matrices())
def test_row_reduce_idempotent(m):
    rref, _, _ = row_reduce(m)
    assert row_reduce(rref)[0] == rref


@given(matrices())
def test_rref_matches_sympy(m):
    rref, _, piv = row_reduce(m)
    if m.rows and m.cols:
        s_rref, s_piv = oracle.to_sympy(m).rref()
        assert oracle.to_sympy(rref) == s_rref
        assert tuple(piv) == s_piv


@given(matrices())
def test_image_basis_spans_image(m):
    b = image_basis(m)
    assert b.cols == rank(m)
    if m.cols:
        solve(b, m)  # every column of m lies in the span


@given(st.integers(1, 4).flatmap(lambda n: matrices(rows=n, cols=n)))
def test_inverse_when_invertible(m):
    if rank(m) == m.rows:
        assert m @ inverse(m) == Matrix.identity(m.rows)


@given(matrices(max_rows=2, max_cols=2), matrices(max_rows=2, max_cols=2))
def test_kron_rank_multiplicative(a, b):
    assert rank(kron(a, b)) == rank(a) * rank(b)
