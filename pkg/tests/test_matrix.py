from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from twistcode import families
from twistcode.field import gf
from twistcode.matrix import (
    Mat,
    MatrixFormatError,
    charpoly,
    format_matrix,
    hamming_weight,
    kernel_basis,
    kron,
    mat_mul,
    matrix_from_json,
    matrix_to_json,
    parse_matrix,
    poly_at_matrix,
    rank,
    rref,
    unvec,
    vec,
)


def dm(X: Mat) -> DomainMatrix:
    K = GF(X.field.p)
    return DomainMatrix([[K(int(v)) for v in row] for row in X.data], X.shape, K)


def rand(rng, F, r, c=None):
    return Mat(F, rng.integers(0, F.q, (r, r if c is None else c)))


# -- arithmetic ------------------------------------------------------------------


def test_identity_is_neutral():
    F = gf(7)
    X = rand(np.random.default_rng(0), F, 3)
    assert X @ Mat.identity(F, 3) == X


def test_J2_squared_over_gf5():
    F = gf(5)
    J = families.all_ones(2, F)
    assert J @ J == J.scale(2)


def test_unit_products():
    F = gf(3)
    assert families.unit(1, 2, 2, F) @ families.unit(2, 1, 2, F) == families.unit(1, 1, 2, F)


def test_shape_mismatch():
    F = gf(3)
    with pytest.raises(ValueError):
        mat_mul(Mat.zeros(F, 2, 3), Mat.zeros(F, 2, 3))


def test_field_mismatch():
    with pytest.raises(ValueError):
        Mat.identity(gf(3), 2) + Mat.identity(gf(5), 2)


def test_out_of_range_entries():
    with pytest.raises(ValueError):
        Mat(gf(3), [[0, 3]])


def test_from_rows_coerces_negatives():
    assert Mat.from_rows(gf(5), [[-1, 2]]).tolist() == [[4, 2]]


def test_extension_field_product():
    F = gf(4)
    rng = np.random.default_rng(1)
    X, Y = rand(rng, F, 3), rand(rng, F, 3)
    ref = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            acc = 0
            for t in range(3):
                acc = F.add(acc, F.mul(int(X[i, t]), int(Y[t, j])))
            ref[i][j] = acc
    assert (X @ Y).tolist() == ref


# -- rref, rank, kernel ----------------------------------------------------------


def test_rref_of_identity():
    F = gf(5)
    R, r, piv = rref(Mat.identity(F, 4))
    assert R == Mat.identity(F, 4) and r == 4 and piv == [0, 1, 2, 3]


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("n", [1, 2, 5])
def test_rank_of_J(q, n):
    assert rank(families.all_ones(n, gf(q))) == 1


def test_rank_of_unit():
    assert rank(families.unit(1, 1, 3, gf(3))) == 1


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_rank_matches_sympy(p):
    rng = np.random.default_rng(p)
    F = gf(p)
    for _ in range(30):
        X = rand(rng, F, int(rng.integers(1, 7)), int(rng.integers(1, 7)))
        if rng.random() < 0.5 and X.rows > 1:
            data = X.data.copy()
            data[-1] = (data[0] * 2 + data[-1] * 0) % p  # force a dependency
            X = Mat(F, data)
        assert rank(X) == dm(X).rank()


def test_rref_is_reduced():
    F = gf(7)
    rng = np.random.default_rng(3)
    for _ in range(20):
        X = rand(rng, F, 4, 6)
        R, r, piv = rref(X)
        for i, c in enumerate(piv):
            col = R.data[:, c]
            assert col[i] == 1 and np.count_nonzero(col) == 1
        assert not R.data[r:].any()
        assert rank(X) == r


def test_kernel_of_identity_is_empty():
    assert kernel_basis(Mat.identity(gf(3), 3)) == []


@pytest.mark.parametrize("n", [2, 3, 5])
def test_kernel_of_J_has_dimension_n_minus_1(n):
    assert len(kernel_basis(families.all_ones(n, gf(5)))) == n - 1


def test_kernel_of_J_plus_I_over_gf3():
    K = kernel_basis(families.ones_plus_id(2, gf(3)))
    assert len(K) == 1
    v = K[0]
    assert v[0] == v[1] != 0


@pytest.mark.parametrize("q", [3, 4, 5, 9])
def test_kernel_vectors_annihilated_and_independent(q):
    F = gf(q)
    rng = np.random.default_rng(q)
    for _ in range(20):
        X = rand(rng, F, int(rng.integers(1, 5)), int(rng.integers(1, 6)))
        K = kernel_basis(X)
        assert len(K) == X.cols - rank(X)
        for v in K:
            assert not mat_mul(X, Mat(F, v[:, None])).data.any()
        if K:
            assert rank(Mat(F, np.array(K))) == len(K)


def test_kernel_matches_sympy_dimension():
    F = gf(5)
    rng = np.random.default_rng(9)
    for _ in range(20):
        X = rand(rng, F, 3, 5)
        assert len(kernel_basis(X)) == dm(X).nullspace().shape[0]


@settings(max_examples=100, deadline=None)
@given(q=st.sampled_from([2, 3, 4, 5, 9]), r=st.integers(1, 5), c=st.integers(1, 5), seed=st.integers(0, 2**32 - 1))
def test_rank_of_transpose(q, r, c, seed):
    X = rand(np.random.default_rng(seed), gf(q), r, c)
    assert rank(X) == rank(X.T)


# -- characteristic polynomial ---------------------------------------------------


def test_charpoly_of_zero():
    assert charpoly(Mat.zeros(gf(3), 4)) == (0, 0, 0, 0, 1)


def test_charpoly_of_J3_over_gf5():
    assert charpoly(families.all_ones(3, gf(5))) == (0, 0, 2, 1)  # x^3 - 3x^2


def test_charpoly_of_diagonal():
    F = gf(7)
    D = Mat(F, np.diag([0, 1, 1, 1]))
    # x (x - 1)^3 = x^4 - 3x^3 + 3x^2 - x
    assert charpoly(D) == (0, 6, 3, 4, 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_charpoly_matches_sympy(p):
    rng = np.random.default_rng(p)
    F = gf(p)
    for _ in range(25):
        X = rand(rng, F, int(rng.integers(1, 7)))
        ref = [int(c) % p for c in reversed(dm(X).charpoly())]
        assert list(charpoly(X)) == ref


@pytest.mark.parametrize("q", [4, 8, 9])
def test_cayley_hamilton_extension_fields(q):
    F = gf(q)
    rng = np.random.default_rng(q)
    for _ in range(15):
        X = rand(rng, F, int(rng.integers(1, 6)))
        assert poly_at_matrix(charpoly(X), X).is_zero()


# -- kron and vec ----------------------------------------------------------------


def test_kron_identities():
    F = gf(3)
    assert kron(Mat.identity(F, 2), Mat.identity(F, 2)) == Mat.identity(F, 4)
    H2 = families.sylvester(1, F)
    assert kron(H2, H2) == families.sylvester(2, F)
    Y = rand(np.random.default_rng(0), F, 2, 3)
    assert kron(Mat(F, [[2]]), Y) == Y.scale(2)


def test_vec_order():
    F = gf(5)
    assert list(vec(families.unit(1, 1, 3, F))) == [1] + [0] * 8
    B = Mat(F, [[1, 2], [3, 4]])
    assert list(vec(B)) == [1, 3, 2, 4]


def test_unvec_roundtrip():
    F = gf(9)
    rng = np.random.default_rng(4)
    for n in (1, 2, 4):
        B = rand(rng, F, n)
        assert unvec(vec(B), n, F) == B


@pytest.mark.parametrize("q", [3, 4, 5])
def test_vec_kron_identity(q):
    F = gf(q)
    rng = np.random.default_rng(q)
    for _ in range(10):
        X, B, Y = rand(rng, F, 2, 3), rand(rng, F, 3), rand(rng, F, 2, 3)
        lhs = vec(X @ B @ Y.T)
        rhs = mat_mul(kron(Y, X), Mat(F, vec(B)[:, None])).data[:, 0]
        assert np.array_equal(lhs, rhs)


def test_hamming_weight():
    F = gf(5)
    assert hamming_weight(families.all_ones(3, F)) == 9
    assert hamming_weight(Mat.from_rows(F, [[1, -1], [-1, 1]])) == 4
    assert hamming_weight(Mat.zeros(F, 3)) == 0


# -- formats ---------------------------------------------------------------------


def test_text_roundtrip():
    F = gf(9)
    X = rand(np.random.default_rng(2), F, 3)
    assert parse_matrix(format_matrix(X)) == X
    R = rand(np.random.default_rng(2), F, 2, 4)
    assert format_matrix(R).splitlines()[0] == "9 2 4"
    assert parse_matrix(format_matrix(R)) == R


def test_text_format_exact_bytes():
    X = Mat(gf(5), [[1, 1], [4, 4]])
    assert format_matrix(X) == "5 2\n1 1\n4 4\n"


def test_comments_and_blank_lines():
    X = parse_matrix("# header comment\n3 2\n\n1 2\n  # inline\n0 1\n")
    assert X.tolist() == [[1, 2], [0, 1]] and X.field.q == 3


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("", None, None),
        ("3\n", 1, 1),
        ("6 2\n0 0\n0 0\n", 1, 1),
        ("3 2\n1 2\n", 2, None),
        ("3 2\n1 2\n1 2 0\n", 3, None),
        ("3 2\n1 2\n1 x\n", 3, 2),
        ("3 2\n1 3\n0 0\n", 2, 2),
    ],
)
def test_malformed_text(text, line, col):
    with pytest.raises(MatrixFormatError) as info:
        parse_matrix(text)
    assert info.value.line == line
    assert info.value.col == col


def test_json_roundtrip():
    X = Mat(gf(4), [[0, 1, 2], [3, 0, 1]])
    obj = matrix_to_json(X)
    assert list(obj) == ["q", "rows", "cols", "entries"]
    assert matrix_from_json(json.dumps(obj)) == X


def test_json_malformed():
    with pytest.raises(MatrixFormatError):
        matrix_from_json({"q": 3, "rows": 1, "cols": 1})
    with pytest.raises(MatrixFormatError):
        matrix_from_json({"q": 3, "rows": 2, "cols": 1, "entries": [[1]]})
