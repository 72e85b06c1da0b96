from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from gpmorita.fields import GF, QQ, FieldMismatch, FieldSpec
from gpmorita.linalg import (
    Mat, image_basis, in_row_space, is_injective, is_surjective,
    kernel_basis, left_kernel, preimage, rank, row_space, solve, solve_left,
)


def test_field_spec_rejects_bad_modulus():
    with pytest.raises(ValueError):
        FieldSpec("Fp", 4)
    with pytest.raises(ValueError):
        FieldSpec("Fp", None)
    with pytest.raises(ValueError):
        FieldSpec("weird")


def test_scalar_parse_format_roundtrip():
    F = QQ()
    assert F.parse("3/4") == Fraction(3, 4)
    assert F.format(Fraction(3, 4)) == "3/4"
    assert F.format(Fraction(5)) == 5
    G = GF(7)
    assert G.parse(-1) == 6
    assert G.parse("1/2") == G.inv(2)


def test_rank_identity_and_zero():
    F = QQ()
    assert rank(Mat.identity(F, 2)) == 2
    assert rank(Mat.zeros(F, 3, 4)) == 0


def test_rank_dependent_rows_q():
    # hand row-reduction: second row is twice the first
    F = QQ()
    m = Mat.from_rows(F, [[1, 2], [2, 4]])
    assert rank(m) == 1


def test_kernel_identity_empty():
    F = QQ()
    k = kernel_basis(Mat.identity(F, 3))
    assert k.cols == 0 and k.rows == 3


def test_kernel_zero_matrix():
    F = QQ()
    k = kernel_basis(Mat.zeros(F, 2, 3))
    assert k.cols == 3
    assert rank(k) == 3


def test_kernel_f2_enumeration_oracle():
    F = GF(2)
    m = Mat.from_rows(F, [[1, 1]])
    k = kernel_basis(m)
    assert k.cols == 1
    # oracle: enumerate F_2^2 by brute force
    sols = [v for v in product([0, 1], repeat=2) if (v[0] + v[1]) % 2 == 0 and any(v)]
    assert [k.data[0][0], k.data[1][0]] in [list(v) for v in sols]
    assert (m @ k).is_zero()


def test_solve_cases():
    F = QQ()
    b = Mat.from_rows(F, [[5], [7]])
    assert solve(Mat.identity(F, 2), b) == b
    assert solve(Mat.from_rows(F, [[0]]), Mat.from_rows(F, [[1]])) is None
    x = solve(Mat.from_rows(F, [[2]]), Mat.from_rows(F, [[1]]))
    assert x.data[0][0] == Fraction(1, 2)


def test_solve_shape_mismatch():
    F = QQ()
    with pytest.raises(ValueError):
        solve(Mat.identity(F, 2), Mat.zeros(F, 3, 1))


def test_mixed_field_is_error():
    with pytest.raises(FieldMismatch):
        Mat.identity(QQ(), 2).matmul(Mat.identity(GF(5), 2))


def test_zero_extent_matrices():
    F = QQ()
    a = Mat.zeros(F, 0, 3)
    assert a.transpose().rows == 3 and a.transpose().cols == 0
    assert rank(a) == 0
    k = kernel_basis(a)
    assert k.rows == 3 and k.cols == 3
    assert (Mat.zeros(F, 2, 0) @ Mat.zeros(F, 0, 5)).is_zero()


def _rand_mat(F, rng, rows, cols, span=5):
    return Mat.from_rows(F, [[rng.draw(st.integers(-span, span)) for _ in range(cols)]
                             for _ in range(rows)], cols)


small = st.integers(0, 4)


@settings(max_examples=60, deadline=None)
@given(st.data(), small, small, st.sampled_from(["Q", "F5", "F2"]))
def test_rank_nullity(data, r, c, fk):
    F = {"Q": QQ(), "F5": GF(5), "F2": GF(2)}[fk]
    m = _rand_mat(F, data, r, c)
    k = kernel_basis(m)
    assert rank(m) + k.cols == c
    if k.cols:
        assert (m @ k).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.data(), small, small, small)
def test_solve_consistent_system(data, r, c, c2):
    F = GF(7)
    a = _rand_mat(F, data, r, c)
    x = _rand_mat(F, data, c, c2)
    b = a @ x
    x2 = solve(a, b)
    assert x2 is not None
    assert a @ x2 == b


@settings(max_examples=30, deadline=None)
@given(st.data(), st.integers(1, 3), st.integers(1, 3))
def test_kron_dims_and_identity(data, n, m):
    F = QQ()
    assert Mat.identity(F, n).kron(Mat.identity(F, m)) == Mat.identity(F, n * m)
    a = _rand_mat(F, data, n, m)
    b = _rand_mat(F, data, m, n)
    k = a.kron(b)
    assert (k.rows, k.cols) == (n * m, m * n)


def test_row_space_canonical_and_membership():
    F = QQ()
    m = Mat.from_rows(F, [[2, 4, 0], [1, 2, 1]])
    rs = row_space(m)
    assert rs.rows == 2
    assert in_row_space(rs, Mat.from_rows(F, [[3, 6, 1]]))
    assert not in_row_space(rs, Mat.from_rows(F, [[0, 1, 0]]))


def test_left_kernel():
    F = QQ()
    m = Mat.from_rows(F, [[1, 0], [2, 0], [0, 1]])
    lk = left_kernel(m)
    assert lk.rows == 1
    assert (lk @ m).is_zero()


def test_image_basis_picks_original_columns():
    F = QQ()
    m = Mat.from_rows(F, [[1, 2, 3], [0, 0, 1]])
    ib = image_basis(m)
    assert ib.cols == 2
    assert [row[0] for row in ib.data] == [F.of_int(1), F.of_int(0)]


def test_preimage_and_injectivity_flags():
    F = QQ()
    a = Mat.from_rows(F, [[1, 0], [0, 0]])
    got = preimage(a, Mat.from_rows(F, [[3], [0]]))
    assert got is not None
    x, k = got
    assert (a @ x) == Mat.from_rows(F, [[3], [0]])
    assert k.cols == 1
    assert not is_injective(a) and not is_surjective(a)
    assert is_injective(Mat.identity(F, 2)) and is_surjective(Mat.identity(F, 2))


def test_solve_left():
    F = QQ()
    a = Mat.from_rows(F, [[1, 2], [0, 1]])
    b = Mat.from_rows(F, [[1, 4]])
    x = solve_left(a, b)
    assert x @ a == b
