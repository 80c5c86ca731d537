import pytest
from hypothesis import given, strategies as st

from oracles import rank_oracle, to_sympy
from torsorlab.errors import DimensionCapExceeded, DomainMismatch, NoSolution
from torsorlab.linalg import (GF, QQ, Matrix, cokernel, dimension_cap, image_basis, inverse,
                              kernel_basis, rank, set_dimension_cap, solve_factor)

FIELDS = [QQ, GF(2), GF(5), GF(7)]


@st.composite
def matrices(draw, max_rows=6, max_cols=6, fields=FIELDS):
    f = draw(st.sampled_from(fields))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    entries = draw(st.lists(st.integers(-3, 3), min_size=r * c, max_size=r * c))
    rows = [[f(entries[i * c + j]) for j in range(c)] for i in range(r)]
    return Matrix.from_rows(f, rows, c) if r else Matrix.zeros(f, 0, c)


@given(matrices())
def test_rank_plus_nullity_is_column_count(m):
    assert rank(m) + kernel_basis(m).dim == m.ncols


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == rank_oracle(m)


@given(matrices())
def test_kernel_vectors_are_killed(m):
    kb = kernel_basis(m)
    assert (m @ kb.basis).is_zero()
    assert rank(kb.basis) == kb.dim


@given(matrices())
def test_image_basis_spans_columns(m):
    img = image_basis(m)
    assert img.dim == rank(m)
    for j in range(m.ncols):
        assert img.contains(m.select_columns([j]))


@given(matrices(max_rows=5, max_cols=5))
def test_cokernel_projection_kills_image(m):
    proj, sec = cokernel(m)
    assert (proj @ m).is_zero()
    assert (proj @ sec).is_identity()
    assert proj.nrows == m.nrows - rank(m)


@given(matrices(max_rows=5, max_cols=5), st.data())
def test_solve_factor_recovers_a_factorization(m, data):
    k = data.draw(st.integers(0, 3))
    vals = data.draw(st.lists(st.integers(-2, 2), min_size=m.ncols * k, max_size=m.ncols * k))
    f = m.field
    x = Matrix.from_rows(f, [[f(vals[i * k + j]) for j in range(k)] for i in range(m.ncols)], k) \
        if m.ncols and k else Matrix.zeros(f, m.ncols, k)
    target = m @ x
    y = solve_factor(m, target)
    assert m @ y == target


def test_inverse_against_sympy():
    m = Matrix.from_rows(QQ, [[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    inv = inverse(m)
    assert (m @ inv).is_identity()
    assert to_sympy(inv) == to_sympy(m).inv()


def test_singular_inverse_raises():
    m = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
    with pytest.raises(NoSolution):
        inverse(m)


def test_rational_entries_stay_exact():
    m = Matrix.from_rows(QQ, [["1/3", "1/6"], ["1/2", "1/4"]])
    assert rank(m) == 1
    assert QQ.format(m[0, 0] + m[0, 1]) == "1/2"


def test_prime_field_reduction():
    f = GF(7)
    assert f(10) == 3
    assert f.inv(3) * 3 % 7 == 1
    assert rank(Matrix.from_rows(f, [[1, 2], [3, 6]])) == 1


def test_non_prime_modulus_rejected():
    with pytest.raises(Exception):
        GF(6)


def test_mixed_fields_rejected():
    a = Matrix.identity(QQ, 2)
    b = Matrix.identity(GF(5), 2)
    with pytest.raises(DomainMismatch):
        a @ b


def test_kron_indexing_is_left_major():
    a = Matrix.from_rows(QQ, [[1, 2]])
    b = Matrix.from_rows(QQ, [[0], [1]])
    assert a.kron(b).tolist() == [[0, 0], [1, 2]]


def test_dimension_cap_is_enforced():
    old = dimension_cap()
    set_dimension_cap(8)
    try:
        with pytest.raises(DimensionCapExceeded):
            Matrix.identity(QQ, 3).kron(Matrix.identity(QQ, 3))
    finally:
        set_dimension_cap(old)


def test_sparse_storage_skips_zeros():
    m = Matrix.from_dict(QQ, 100, 100, {(3, 4): QQ(5)})
    assert m.nnz() == 1
    assert m[3, 4] == 5 and m[4, 3] == 0
