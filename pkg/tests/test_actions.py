import itertools
import random

import pytest

from src.algebra.field import make_field
from src.algebra.matrix import rref
from src.errors import BadParams, DimensionMismatch
from src.geometry.actions import (
    DiagonalElement, MonomialElement, Permutation, act_diagonal, act_diagonal_plucker,
    act_permutation, conjugate_to_left, quotient_act, same_diagonal_class,
)
from src.geometry.grassmann import LinearCode, plucker, random_code

from .conftest import GM_ROWS, GZ_ROWS, SECRET_D


def test_permutation_basics():
    P = Permutation((3, 1, 4, 2))
    assert P.inverse().images == (2, 4, 1, 3)
    assert P.compose(P.inverse()) == Permutation.identity(4)
    assert Permutation.transposition(4, 1, 2).images == (2, 1, 3, 4)
    assert str(P) == "(3,1,4,2)"
    assert P.assignment()[:4] == [0, 0, 1, 0]
    with pytest.raises(BadParams):
        Permutation((1, 1, 2))


def test_permutation_matrix_product(f5):
    P, R = Permutation((3, 1, 4, 2)), Permutation((2, 3, 1, 4))
    assert P.compose(R).matrix(f5) == P.matrix(f5) @ R.matrix(f5)
    assert P.matrix(f5).data[0] == (0, 0, 1, 0)


def test_diagonal_must_be_nonzero(f5):
    with pytest.raises(BadParams):
        DiagonalElement(f5, (1, 0, 2))
    assert DiagonalElement(f5, (6, 7)).entries == (1, 2)


def test_act_permutation_moves_columns(code1, secret_perm):
    moved = act_permutation(secret_perm, code1)
    assert moved.gen.to_lists() == [[0, 1, 1, 1], [1, 2, 0, 1]]
    assert moved.gen == code1.gen @ secret_perm.matrix(code1.field)
    assert quotient_act(secret_perm, code1).gen.to_lists() == [[1, 0, 3, 4], [0, 1, 1, 1]]


def test_swap_plucker_vector(code1):
    swapped = act_permutation(Permutation.transposition(4, 1, 2), code1)
    assert plucker(swapped).coords == (4, 4, 4, 1, 2, 1)


def test_monomial_maps_running_example(f5, code1, code2, secret_perm):
    Q = MonomialElement(DiagonalElement(f5, SECRET_D), secret_perm)
    assert Q.apply(code1).same_code(code2)
    assert rref(code1.gen @ Q.matrix())[0] == code2.gen


def test_same_diagonal_class_dlog(code1, code2):
    result = same_diagonal_class(code1, code2)
    assert result.equivalent
    assert result.method == "dlog"
    assert result.witness.entries == (1, 2, 1, 2)
    assert act_diagonal(result.witness, code1).same_code(code2)


def test_secret_witness_after_permuting(code1, code2, secret_perm):
    result = same_diagonal_class(act_permutation(secret_perm, code1), code2)
    assert result.witness.entries == (1, 4, 2, 3)


def test_zero_pattern_rejection(f5, code1):
    other = LinearCode.from_rows(f5, GZ_ROWS)
    result = same_diagonal_class(code1, other)
    assert not result
    assert result.method == "zero-pattern"


def test_inconsistent_dlog_system(f5, code1):
    other = LinearCode.from_rows(f5, GM_ROWS)
    assert plucker(other).coords == (1, 1, 3, 4, 4, 2)
    confirmed = same_diagonal_class(code1, other)
    assert not confirmed
    assert confirmed.method == "exhaustive"
    assert not confirmed.heuristic
    flagged = same_diagonal_class(code1, other, exhaustive_limit=0)
    assert not flagged
    assert flagged.method == "dlog"
    assert flagged.heuristic


def test_binary_field_has_trivial_diagonal_group():
    F2 = make_field(2)
    a = LinearCode.from_rows(F2, [[1, 0, 1], [0, 1, 1]])
    b = LinearCode.from_rows(F2, [[1, 1, 0], [0, 1, 1]])
    c = LinearCode.from_rows(F2, [[1, 0, 0], [0, 1, 1]])
    assert same_diagonal_class(a, b).method == "trivial-group"
    assert same_diagonal_class(a, b).witness == DiagonalElement.ones(F2, 3)
    assert not same_diagonal_class(a, c)


def test_same_diagonal_class_shape_mismatch(f5, code1):
    with pytest.raises(DimensionMismatch):
        same_diagonal_class(code1, LinearCode.from_rows(f5, [[1, 0, 1], [0, 1, 1]]))


def test_conjugate_to_left(f5, code1, secret_perm):
    lam = DiagonalElement(f5, (1, 4, 2, 3))
    D = conjugate_to_left(lam, secret_perm)
    assert D.entries == (2, 1, 3, 4)
    assert D.is_scalar_multiple_of(DiagonalElement(f5, SECRET_D))
    left = code1.gen @ D.matrix() @ secret_perm.matrix(f5)
    right = code1.gen @ secret_perm.matrix(f5) @ lam.matrix()
    assert left == right


def test_conjugate_to_left_random():
    F = make_field(13)
    rng = random.Random(4)
    for _ in range(20):
        images = list(range(1, 6))
        rng.shuffle(images)
        P = Permutation(tuple(images))
        lam = DiagonalElement(F, tuple(rng.randrange(1, 13) for _ in range(5)))
        assert conjugate_to_left(lam, P).matrix() @ P.matrix(F) == P.matrix(F) @ lam.matrix()


@pytest.mark.slow
@pytest.mark.parametrize("q", [5, 101])
@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (6, 3)])
def test_diagonal_action_is_equivariant(q, n, k):
    rng = random.Random(9 + q + 10 * n + k)
    F = make_field(q)
    for _ in range(200):
        code = random_code(F, n, k, rng)
        lam = DiagonalElement(F, tuple(rng.randrange(1, q) for _ in range(n)))
        expected = act_diagonal_plucker(lam, plucker(code))
        actual = plucker(act_diagonal(lam, code))
        assert len(actual.coords) == len(expected.coords)
        for a, b in zip(actual.coords, expected.coords):
            assert a == b


def test_diagonal_class_finds_scaled_codes():
    rng = random.Random(9)
    for q in (5, 101):
        F = make_field(q)
        for n, k in ((4, 2), (5, 3)):
            for _ in range(10):
                code = random_code(F, n, k, rng)
                lam = DiagonalElement(F, tuple(rng.randrange(1, q) for _ in range(n)))
                result = same_diagonal_class(code, act_diagonal(lam, code))
                assert result.equivalent
                assert act_diagonal(result.witness, code).same_code(act_diagonal(lam, code))


def _exhaustive_witnesses(Ca, Cb):
    F = Ca.field
    candidates = (DiagonalElement(F, entries)
                  for entries in itertools.product(range(1, F.q), repeat=Ca.n))
    return [lam for lam in candidates if act_diagonal(lam, Ca).same_code(Cb)]


def test_diagonal_class_agrees_with_exhaustive_search():
    rng = random.Random(31)
    for trial in range(50):
        q = rng.choice((2, 3, 5))
        n = rng.randint(2, 4)
        k = rng.randint(1, n - 1)
        F = make_field(q)
        Ca = random_code(F, n, k, rng)
        if trial % 2:
            lam = DiagonalElement(F, tuple(rng.randrange(1, q) for _ in range(n)))
            Cb = act_diagonal(lam, Ca)
        else:
            Cb = random_code(F, n, k, rng)
        result = same_diagonal_class(Ca, Cb, exhaustive_limit=0)
        found = _exhaustive_witnesses(Ca, Cb)
        assert result.equivalent == bool(found), (q, n, k, trial)
        if result.equivalent:
            assert act_diagonal(result.witness, Ca).same_code(Cb)
        if trial % 2:
            assert result.equivalent


def test_group_element_size_must_match(f5, code1):
    with pytest.raises(DimensionMismatch):
        act_diagonal(DiagonalElement.ones(f5, 3), code1)
    with pytest.raises(DimensionMismatch):
        act_permutation(Permutation.identity(5), code1)
