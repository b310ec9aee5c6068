import random

import pytest
import sympy

from src.algebra.field import make_field
from src.algebra.matrix import FqMatrix, det, minor, rref
from src.errors import BadIndex, DimensionMismatch, DivisionByZero, NonSquare


def test_rref_of_permuted_running_example(f5):
    M = FqMatrix.from_rows(f5, [[0, 2, 1, 4], [3, 4, 0, 4]])
    R, pivots, rank = rref(M)
    assert R.to_lists() == [[1, 0, 1, 2], [0, 1, 3, 2]]
    assert pivots == (0, 1)
    assert rank == 2
    assert R.is_rref()


def test_rref_rank_deficient(f5):
    M = FqMatrix.from_rows(f5, [[1, 2, 3], [2, 4, 0], [3, 1, 4]])
    R, pivots, rank = rref(M)
    assert rank == 2
    assert R.data[2] == (0, 0, 0)
    assert pivots == (0, 2)


def test_det_matches_sympy():
    F = make_field(101)
    rng = random.Random(3)
    for size in range(1, 6):
        for _ in range(20):
            rows = [[rng.randrange(101) for _ in range(size)] for _ in range(size)]
            assert det(FqMatrix.from_rows(F, rows)) == int(sympy.Matrix(rows).det()) % 101


def test_rref_is_idempotent():
    rng = random.Random(5)
    for q in (2, 5, 101):
        F = make_field(q)
        for _ in range(30):
            rows, cols = rng.randint(1, 5), rng.randint(1, 6)
            M = FqMatrix.from_rows(F, [[rng.randrange(q) for _ in range(cols)] for _ in range(rows)])
            R, pivots, rank = rref(M)
            assert rref(R) == (R, pivots, rank)


def test_rref_preserves_row_space():
    rng = random.Random(6)
    F = make_field(101)
    checked = 0
    while checked < 100:
        rows, cols = rng.randint(1, 4), rng.randint(1, 6)
        S = FqMatrix.from_rows(F, [[rng.randrange(101) for _ in range(rows)] for _ in range(rows)])
        if det(S) == 0:
            continue
        M = FqMatrix.from_rows(F, [[rng.randrange(101) for _ in range(cols)] for _ in range(rows)])
        assert rref(S @ M) == rref(M)
        checked += 1


def test_det_needs_square(f5):
    with pytest.raises(NonSquare):
        det(FqMatrix.from_rows(f5, [[1, 2, 3], [0, 1, 1]]))
    assert det(FqMatrix.zeros(f5, 0, 0)) == 1


def test_inverse():
    F = make_field(13)
    rng = random.Random(5)
    checked = 0
    while checked < 10:
        M = FqMatrix.from_rows(F, [[rng.randrange(13) for _ in range(4)] for _ in range(4)])
        if det(M) == 0:
            continue
        assert M @ M.inverse() == FqMatrix.identity(F, 4)
        checked += 1


def test_inverse_errors(f5):
    with pytest.raises(DivisionByZero):
        FqMatrix.from_rows(f5, [[1, 2], [2, 4]]).inverse()
    with pytest.raises(NonSquare):
        FqMatrix.from_rows(f5, [[1, 2, 3]]).inverse()


def test_minor_uses_one_based_columns(G1):
    assert minor(G1, (1, 2)) == 1
    assert minor(G1, (3, 4)) == 1
    assert minor(G1, (2, 3)) == 4
    with pytest.raises(BadIndex):
        minor(G1, (0, 1))
    with pytest.raises(BadIndex):
        minor(G1, (2, 2))
    with pytest.raises(BadIndex):
        minor(G1, (1, 2, 3))


def test_shape_errors(f5):
    with pytest.raises(DimensionMismatch):
        FqMatrix.from_rows(f5, [[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        FqMatrix.identity(f5, 2) @ FqMatrix.identity(f5, 3)


def test_entries_are_reduced(f5):
    M = FqMatrix.from_rows(f5, [[7, -1], [10, 5]])
    assert M.to_lists() == [[2, 4], [0, 0]]
    assert M.transpose().to_lists() == [[2, 0], [4, 0]]


def test_small_examples(f5, G2):
    assert det(FqMatrix.from_rows(f5, [[0, 1], [1, 1]])) == 4
    assert minor(G2, (1, 2)) == 1
    assert minor(G2, (2, 3)) == 4
    assert rref(FqMatrix.identity(f5, 3))[2] == 3
    zero = FqMatrix.zeros(f5, 2, 3)
    assert rref(zero) == (zero, (), 0)
