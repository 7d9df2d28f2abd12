import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cess.errors import (
    DimensionMismatch, DuplicateAlpha, IndexOutOfBounds, SingularMatrix, SingularSystem, ZeroAlpha,
)
from cess.gf import PrimeField
from cess.matrix import (
    FieldMatrix, hstack, invert, matmul, rank, solve_right, submatrix, vandermonde, vec_mat,
)

V_EXAMPLE = [
    [1, 1, 1, 1, 1, 1],
    [1, 2, 3, 4, 5, 6],
    [1, 4, 2, 2, 4, 1],
    [1, 1, 6, 1, 6, 6],
]
T_EXAMPLE = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 4, 1, 1]]
G_EXAMPLE = V_EXAMPLE[:3] + [[0, 0, 0, 6, 3, 4]]


def test_vandermonde_example():
    assert vandermonde(range(1, 7), 4, 7).tolist() == V_EXAMPLE
    F = PrimeField(7)
    assert vandermonde([F(a) for a in range(1, 7)], 4) == vandermonde(range(1, 7), 4, 7)
    assert vandermonde([5], 1, 7).tolist() == [[1]]
    assert vandermonde([1, 2, 3], 3, 11).row(2) == (1, 4, 9)


def test_vandermonde_rejects_bad_points():
    with pytest.raises(ZeroAlpha):
        vandermonde([0, 1], 2, 7)
    with pytest.raises(DuplicateAlpha):
        vandermonde([1, 8], 2, 7)


def test_generator_product():
    g = FieldMatrix.from_rows(T_EXAMPLE, 7) @ vandermonde(range(1, 7), 4, 7)
    assert g.tolist() == G_EXAMPLE
    assert g.row(3) == (0, 0, 0, 6, 3, 4)
    assert matmul(FieldMatrix.from_rows([[3]], 7), FieldMatrix.from_rows([[5]], 7)).tolist() == [[1]]


def test_generator_block_properties():
    g = FieldMatrix.from_rows(G_EXAMPLE, 7)
    # any (n - r)(k + r) = 4 columns are independent
    for cols in itertools.combinations(range(6), 4):
        assert rank(submatrix(g, range(4), cols)) == 4
    assert submatrix(g, [3], range(3)).tolist() == [[0, 0, 0]]
    assert submatrix(g, [3], [3, 4, 5]).row(0) == (6, 3, 4)
    assert submatrix(g, range(3), range(3)) == vandermonde([1, 2, 3], 3, 7)


def test_submatrix_edges():
    g = FieldMatrix.from_rows(G_EXAMPLE, 7)
    assert submatrix(g, range(4), range(6)) == g
    assert submatrix(g, range(4), []).shape == (4, 0)
    with pytest.raises(IndexOutOfBounds):
        submatrix(g, [4], [0])


def test_invert_vandermonde():
    v = vandermonde([1, 2, 3], 3, 7)
    assert v @ invert(v) == FieldMatrix.identity(3, 7)
    assert invert(v) @ v == FieldMatrix.identity(3, 7)


def test_singular():
    a = FieldMatrix.from_rows([[1, 2], [2, 4]], 7)
    with pytest.raises(SingularMatrix):
        invert(a)
    with pytest.raises(SingularSystem):
        solve_right(a, [1, 2])


def test_solve_identity():
    assert solve_right(FieldMatrix.identity(3, 11), [4, 5, 6]) == [4, 5, 6]


@settings(max_examples=40)
@given(st.sampled_from([7, 11, 13]), st.integers(1, 5), st.integers(0, 2**32))
def test_solve_roundtrip(q, size, seed):
    rng = random.Random(seed)
    while True:
        a = FieldMatrix.from_rows([[rng.randrange(q) for _ in range(size)] for _ in range(size)], q)
        if rank(a) == size:
            break
    x0 = [rng.randrange(q) for _ in range(size)]
    assert solve_right(a, vec_mat(x0, a)) == x0


def test_solve_overdetermined():
    a = vandermonde(range(1, 7), 3, 7)  # 3 unknowns, 6 equations
    x0 = [2, 5, 1]
    assert solve_right(a, vec_mat(x0, a)) == x0


def test_dimensions():
    a = FieldMatrix.identity(2, 7)
    with pytest.raises(DimensionMismatch):
        matmul(a, FieldMatrix.identity(3, 7))
    with pytest.raises(DimensionMismatch):
        vec_mat([1, 2, 3], a)
    h = hstack([a, FieldMatrix.zeros(2, 1, 7)])
    assert h.tolist() == [[1, 0, 0], [0, 1, 0]]
    assert a.transpose() == a
    assert FieldMatrix.from_rows([[1, 2, 3]], 7).transpose().tolist() == [[1], [2], [3]]
