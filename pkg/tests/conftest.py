"""Shared fixtures: the F5 running example over Gr(2,4) and its negatives."""

from pathlib import Path

import pytest

from src.algebra.field import make_field
from src.algebra.matrix import FqMatrix
from src.geometry.actions import DiagonalElement, MonomialElement, Permutation
from src.geometry.grassmann import LinearCode
from src.invariants.engine import pair_invariant
from src.lce_instance import LceInstance

FIXTURES_DIR = Path(__file__).parent.parent / "fixtures"

G1_ROWS = [[1, 0, 1, 1], [0, 1, 1, 2]]
G2_ROWS = [[1, 0, 1, 2], [0, 1, 3, 2]]
GZ_ROWS = [[1, 0, 1, 1], [0, 1, 0, 1]]
GM_ROWS = [[1, 0, 1, 1], [0, 1, 1, 3]]
SECRET_D = (1, 3, 4, 2)
SECRET_P = (3, 1, 4, 2)


@pytest.fixture
def f5():
    return make_field(5)


@pytest.fixture
def G1(f5):
    return FqMatrix.from_rows(f5, G1_ROWS)


@pytest.fixture
def G2(f5):
    return FqMatrix.from_rows(f5, G2_ROWS)


@pytest.fixture
def code1(f5):
    return LinearCode.from_rows(f5, G1_ROWS)


@pytest.fixture
def code2(f5):
    return LinearCode.from_rows(f5, G2_ROWS)


@pytest.fixture
def secret_perm():
    return Permutation(SECRET_P)


@pytest.fixture
def running_instance(f5, G1, G2, secret_perm):
    secret = MonomialElement(DiagonalElement(f5, SECRET_D), secret_perm)
    return LceInstance(f5, 4, 2, G1, G2, secret)


@pytest.fixture
def inequivalent_instance(f5, G1):
    return LceInstance(f5, 4, 2, G1, FqMatrix.from_rows(f5, GZ_ROWS))


@pytest.fixture
def v1():
    """p12*p34/(p14*p23)"""
    return pair_invariant((1, 2), (3, 4), (1, 4), (2, 3), n=4)


@pytest.fixture
def v2():
    """p13*p24/(p14*p23)"""
    return pair_invariant((1, 3), (2, 4), (1, 4), (2, 3), n=4)


@pytest.fixture
def fixtures_dir():
    return FIXTURES_DIR
