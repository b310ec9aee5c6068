import pytest

from src.errors import BadIndex, DimensionMismatch
from src.modeling.polynomial import SparsePoly, polynomial_ring


def test_square_of_linear_form():
    x = SparsePoly.variable(5, 2, 0)
    y = SparsePoly.variable(5, 2, 1)
    square = (x + y) ** 2
    assert square.terms == {((0, 2),): 1, ((0, 1), (1, 1)): 2, ((1, 2),): 1}
    assert square.is_homogeneous(2)
    assert square.total_degree() == 2
    assert square.evaluate([1, 1]) == 4
    assert square.to_text(2) == "2*x11*x12 + x11^2 + x12^2"


def test_characteristic_two_cancellation():
    x = SparsePoly.variable(2, 2, 0)
    y = SparsePoly.variable(2, 2, 1)
    assert (x + y) ** 2 == x * x + y * y


def test_zero_coefficients_are_dropped():
    p = SparsePoly(7, 3, {((0, 1),): 7, ((1, 1),): 3})
    assert p.terms == {((1, 1),): 3}
    assert (p - p).is_zero()
    assert p.scale(7).is_zero()
    assert (-p).terms == {((1, 1),): 4}
    assert SparsePoly.zero(7, 3).to_text(3) == "0"
    assert SparsePoly.constant(7, 3, 10).to_text(3) == "3"


def test_linear_collects_repeated_variables():
    p = SparsePoly.linear(5, 4, [(0, 2), (3, 1), (0, 3)])
    assert p.terms == {((3, 1),): 1}


def test_evaluate_and_count():
    p = SparsePoly(11, 3, {((0, 2), (2, 1)): 3, (): 5})
    assert p.evaluate([2, 9, 4]) == (3 * 4 * 4 + 5) % 11
    assert p.monomial_count() == 2
    assert not p.is_homogeneous(3)
    assert p.sorted_terms() == [(5, ()), (3, ((0, 2), (2, 1)))]


def test_errors():
    with pytest.raises(BadIndex):
        SparsePoly.variable(5, 2, 2)
    with pytest.raises(BadIndex):
        SparsePoly(5, 2, {((4, 1),): 1})
    with pytest.raises(DimensionMismatch):
        SparsePoly.variable(5, 2, 0) + SparsePoly.variable(5, 3, 0)
    with pytest.raises(DimensionMismatch):
        SparsePoly.variable(5, 2, 0).evaluate([1])


def test_backed_by_the_shared_sparse_ring():
    R = polynomial_ring(7, 3)
    assert polynomial_ring(7, 3) is R
    x0, x1, x2 = R.gens
    p = SparsePoly.variable(7, 3, 0) * SparsePoly.variable(7, 3, 2) - SparsePoly.constant(7, 3, 2)
    assert p.poly == x0 * x2 - 2
    assert p.poly.ring == R
    wrapped = SparsePoly.from_ring_element(7, 3, 3 * x1 ** 2 + x0)
    assert wrapped.terms == {((1, 2),): 3, ((0, 1),): 1}
    assert wrapped.monomial_count() == len(wrapped.poly.terms()) == 2
    assert wrapped.scale(5).poly == 15 * x1 ** 2 + 5 * x0
    with pytest.raises(DimensionMismatch):
        SparsePoly.from_ring_element(5, 3, x0)


def test_field_equation_vanishes_everywhere():
    x = SparsePoly.variable(5, 1, 0)
    fermat = x ** 5 - x
    assert fermat.monomial_count() == 2
    assert all(fermat.evaluate([a]) == 0 for a in range(5))
    assert x.scale(5).is_zero()
