"""Exact linear algebra: elimination, kernels, affine solving, quotients.

Expected values in the worked examples are frozen from hand computation;
the property tests generate random small matrices over Q and small prime
fields and check the algebraic identities the rest of the package leans on.
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bimodcheck.errors import FieldMismatchError, ShapeError, SingularError
from bimodcheck.exactlin import (
    Field, Matrix, ModInt, QQ, Subspace, hstack, infeasibility_certificate,
    invert, kernel_basis, kron_vec, quotient_space, rank, right_inverse, rref,
    solve_affine, vstack,
)


def mat(field, rows, cols=None):
    return Matrix(field, [[field.scalar(x) for x in row] for row in rows],
                  cols=cols)


FIELDS = [QQ, Field(2), Field(3), Field(5), Field(7)]

fields_st = st.sampled_from(FIELDS)
entries_st = st.integers(min_value=-4, max_value=4)


@st.composite
def matrices(draw, max_dim=4):
    field = draw(fields_st)
    rows = draw(st.integers(min_value=0, max_value=max_dim))
    cols = draw(st.integers(min_value=0, max_value=max_dim))
    data = draw(st.lists(
        st.lists(entries_st, min_size=cols, max_size=cols),
        min_size=rows, max_size=rows))
    return mat(field, data, cols=cols)


# ---------------------------------------------------------------------------
# Field and scalar behaviour


def test_field_identity():
    assert QQ.is_rational
    assert Field() == QQ
    assert Field(3) == Field(3)
    assert Field(3) != Field(5)
    assert Field(3) != QQ


def test_nonprime_modulus_rejected():
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        Field(1)


def test_rational_scalar_parsing():
    half = QQ.scalar("1/2")
    assert half + half == QQ.one
    assert QQ.scalar("-3") == QQ.scalar(-3)
    assert QQ.to_str(QQ.scalar("2/4")) == "1/2"


def test_modular_scalar_normalization():
    f3 = Field(3)
    assert f3.scalar(5) == f3.scalar(2)
    assert f3.scalar(-1) == f3.scalar(2)
    two = f3.scalar(2)
    assert two * two == f3.one
    assert f3.one / two == two


def test_modulus_mixing_rejected():
    with pytest.raises(FieldMismatchError):
        Field(3).scalar(ModInt(1, 5))


# ---------------------------------------------------------------------------
# Elimination: frozen examples


def test_rref_identity_is_fixed():
    m = Matrix.identity(QQ, 3)
    r, pivots = rref(m)
    assert r == m
    assert pivots == (0, 1, 2)


def test_rref_rank_one_square():
    m = mat(QQ, [[1, 1], [1, 1]])
    r, pivots = rref(m)
    assert r == mat(QQ, [[1, 1], [0, 0]])
    assert pivots == (0,)


def test_rref_normalizes_modular_pivot():
    f3 = Field(3)
    r, pivots = rref(mat(f3, [[2]]))
    assert r == mat(f3, [[1]])
    assert pivots == (0,)


def test_kernel_of_rank_one_square():
    ker = kernel_basis(mat(QQ, [[1, 1], [1, 1]]))
    assert ker.dim == 1
    assert ker.contains([QQ.scalar(1), QQ.scalar(-1)])


def test_kernel_of_identity_is_zero():
    assert kernel_basis(Matrix.identity(QQ, 3)).dim == 0


def test_kernel_of_dual_numbers_multiplication():
    # multiplication table of k[x]/(x^2) flattened as a map k^4 -> k^2
    m = mat(QQ, [[1, 0, 0, 0], [0, 1, 1, 0]])
    assert kernel_basis(m).dim == 2


def test_solve_affine_underdetermined():
    sol = solve_affine(mat(QQ, [[1, 1]]), [QQ.one])
    assert sol is not None
    assert sol.particular == [QQ.one, QQ.zero]
    assert sol.homogeneous.dim == 1
    assert sol.homogeneous.contains([QQ.scalar(1), QQ.scalar(-1)])


def test_solve_affine_infeasible_with_certificate():
    m = mat(QQ, [[1], [1]])
    rhs = [QQ.scalar(1), QQ.scalar(2)]
    assert solve_affine(m, rhs) is None
    cert = infeasibility_certificate(m, rhs)
    assert cert is not None
    # y m = 0 and y rhs = 1
    assert all(not x for x in m.transpose().apply(cert))
    assert sum((y * r for y, r in zip(cert, rhs)), QQ.zero) == QQ.one


def test_quotient_by_zero_is_identity():
    q = quotient_space(2, Subspace.zero(QQ, 2))
    assert q.dim == 2
    assert q.projection == Matrix.identity(QQ, 2)
    assert q.section == Matrix.identity(QQ, 2)


def test_quotient_by_diagonal_line():
    rel = Subspace.from_span(QQ, 2, [[QQ.scalar(1), QQ.scalar(-1)]])
    q = quotient_space(2, rel)
    assert q.dim == 1
    # both standard basis vectors land on the same class
    assert q.projection.column(0) == q.projection.column(1)


def test_quotient_by_multiplication_kernel():
    ker = kernel_basis(mat(QQ, [[1, 0, 0, 0], [0, 1, 1, 0]]))
    assert quotient_space(4, ker).dim == 2


def test_invert_and_singular():
    m = mat(QQ, [[1, 1], [0, 1]])
    inv = invert(m)
    assert m @ inv == Matrix.identity(QQ, 2)
    with pytest.raises(SingularError):
        invert(mat(QQ, [[1, 1], [1, 1]]))


def test_right_inverse_of_surjection():
    m = mat(QQ, [[1, 1, 0], [0, 1, 1]])
    r = right_inverse(m)
    assert m @ r == Matrix.identity(QQ, 2)
    with pytest.raises(SingularError):
        right_inverse(mat(QQ, [[1, 1], [1, 1]]))


def test_stacking_shapes():
    a = mat(QQ, [[1, 2]])
    b = mat(QQ, [[3, 4]])
    assert vstack(a, b) == mat(QQ, [[1, 2], [3, 4]])
    assert hstack(a, b) == mat(QQ, [[1, 2, 3, 4]])
    with pytest.raises(ShapeError):
        vstack(a, mat(QQ, [[1, 2, 3]]))


def test_kron_vec_matches_matrix_kron():
    u = [QQ.scalar(1), QQ.scalar(2)]
    v = [QQ.scalar(3), QQ.scalar(5)]
    got = kron_vec(u, v, QQ)
    assert got == [QQ.scalar(3), QQ.scalar(5), QQ.scalar(6), QQ.scalar(10)]


def test_ragged_rows_rejected():
    with pytest.raises(ShapeError):
        Matrix(QQ, [[QQ.one], [QQ.one, QQ.zero]])


def test_empty_matrix_shapes():
    m = Matrix(QQ, [], cols=3)
    assert m.rows == 0 and m.cols == 3
    assert rank(m) == 0
    assert kernel_basis(m).dim == 3


# ---------------------------------------------------------------------------
# Property tests


@given(matrices())
def test_rank_plus_nullity_is_column_count(m):
    assert rank(m) + kernel_basis(m).dim == m.cols


@given(matrices())
def test_rref_is_idempotent(m):
    r1, p1 = rref(m)
    r2, p2 = rref(r1)
    assert r1 == r2
    assert p1 == p2


@given(matrices())
def test_kernel_vectors_annihilate(m):
    ker = kernel_basis(m)
    for row in ker.basis.data:
        assert all(not x for x in m.apply(list(row)))


@st.composite
def systems(draw, max_dim=4):
    """A matrix together with a right-hand side known to be consistent."""
    m = draw(matrices(max_dim))
    x = [m.field.scalar(draw(entries_st)) for _ in range(m.cols)]
    return m, m.apply(x)


@given(systems())
def test_solve_affine_is_exact(m_rhs):
    m, rhs = m_rhs
    sol = solve_affine(m, rhs)
    assert sol is not None
    assert m.apply(sol.particular) == rhs
    for row in sol.homogeneous.basis.data:
        assert all(not x for x in m.apply(list(row)))
    assert sol.homogeneous.dim == kernel_basis(m).dim


@given(matrices(), st.lists(entries_st, min_size=0, max_size=4))
def test_infeasibility_certificates_are_complete(m, raw_rhs):
    rhs = [m.field.scalar(x) for x in (raw_rhs + [0] * m.rows)[:m.rows]]
    sol = solve_affine(m, rhs)
    cert = infeasibility_certificate(m, rhs)
    if sol is None:
        assert cert is not None
        assert all(not x for x in m.transpose().apply(cert))
        total = m.field.zero
        for y, r in zip(cert, rhs):
            total = total + y * r
        assert total == m.field.one
    else:
        assert cert is None


@given(matrices())
def test_quotient_section_splits_projection(m):
    rel = kernel_basis(m)
    q = quotient_space(m.cols, rel)
    assert q.dim == m.cols - rel.dim
    if q.dim:
        assert q.projection @ q.section == Matrix.identity(m.field, q.dim)
    for row in rel.basis.data:
        assert all(not x for x in q.projection.apply(list(row)))


@given(matrices())
def test_subspace_membership_roundtrip(m):
    space = Subspace.from_span(m.field, m.cols, [list(r) for r in m.data])
    assert space.dim == rank(m)
    for row in m.data:
        assert space.contains(list(row))
        coords = space.coords_of(list(row))
        assert space.embed(coords) == list(row)


@given(fields_st, st.integers(min_value=1, max_value=4), st.data())
def test_invert_roundtrip_on_constructed_invertibles(field, n, data):
    # unitriangular times permutation is always invertible
    upper = [[field.scalar(data.draw(entries_st)) if j > i
              else (field.one if j == i else field.zero)
              for j in range(n)] for i in range(n)]
    perm = data.draw(st.permutations(range(n)))
    p_rows = [[field.one if j == perm[i] else field.zero for j in range(n)]
              for i in range(n)]
    m = Matrix(field, upper) @ Matrix(field, p_rows)
    inv = invert(m)
    assert m @ inv == Matrix.identity(field, n)
    assert inv @ m == Matrix.identity(field, n)


def test_fraction_arithmetic_survives_scaling():
    m = mat(QQ, [[Fraction(1, 3), Fraction(1, 6)], [Fraction(1, 2), 1]])
    r, pivots = rref(m)
    assert pivots == (0, 1)
    assert invert(m) @ m == Matrix.identity(QQ, 2)
