import itertools

import numpy as np
import pytest

from lieimage.errors import (DivisionByZero, EvenCharacteristic,
                             FieldMismatch, InvalidExponent, NotPrime,
                             ReducibleModulus)
from lieimage.gf import (all_elements, characters, field_from_order,
                         make_field, odd_prime_powers, parse_element,
                         quadratic_character, smallest_irreducible, sqrt)

SMALL_QS = [3, 5, 7, 9, 25, 27]


def test_field_from_order_picks_prime_and_degree():
    field = field_from_order(9)
    assert (field.p, field.r, field.modulus) == (3, 2, (1, 0, 1))
    assert field.q == 9
    assert str(field) == "F_9"


def test_smallest_irreducible():
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert smallest_irreducible(5, 2) == (2, 0, 1)


def test_rejected_orders():
    with pytest.raises(EvenCharacteristic):
        field_from_order(4)
    with pytest.raises(EvenCharacteristic):
        make_field(2)
    with pytest.raises(NotPrime):
        field_from_order(15)
    with pytest.raises(NotPrime):
        make_field(9)


@pytest.mark.parametrize("modulus", [(0, 0, 1), (1, 1, 1), (1, 0, 2)])
def test_rejected_moduli(modulus):
    with pytest.raises(ReducibleModulus):
        make_field(3, 2, modulus)


@pytest.mark.parametrize("q", SMALL_QS)
def test_inverses_exhaustive(q):
    field = field_from_order(q)
    for a in all_elements(field)[1:]:
        assert a * a.inverse() == field.one
        assert a / a == field.one


def test_distributivity_exhaustive(f9):
    elements = all_elements(f9)
    for a, b, c in itertools.product(elements, repeat=3):
        assert a * (b + c) == a * b + a * c


def test_zero_has_no_inverse(f7):
    with pytest.raises(DivisionByZero):
        f7.zero.inverse()
    with pytest.raises(ZeroDivisionError):
        f7.one / f7.zero


def test_mixed_fields(f3, f5):
    with pytest.raises(FieldMismatch):
        f3.one + f5.one


def test_integers_are_prime_subfield_scalars(f7, f9):
    assert f7.element(3) + 5 == f7.element(1)
    assert 2 * f7.element(4) == f7.element(1)
    # 2 * t = (0, 2) in F_9 = F_3[t] / (t^2 + 1)
    assert (f9.element(3) * 2).coefficients == (0, 2)


def test_negative_exponent(f5):
    with pytest.raises(InvalidExponent):
        f5.element(2) ** -1


@pytest.mark.parametrize("q", SMALL_QS)
def test_quadratic_character_matches_squares(q):
    field = field_from_order(q)
    squares = {(a * a).value for a in all_elements(field)}
    for a in all_elements(field):
        expected = 0 if a.is_zero() else 1 if a.value in squares else -1
        assert quadratic_character(a) == expected
    values = np.arange(q)
    assert list(characters(field, values)) == [
        quadratic_character(a) for a in all_elements(field)
    ]
    assert quadratic_character(field.scalar(-1)) == (-1) ** ((q - 1) // 2)


@pytest.mark.parametrize("q", SMALL_QS)
def test_sqrt(q):
    field = field_from_order(q)
    for a in all_elements(field):
        root = sqrt(a)
        if quadratic_character(a) == -1:
            assert root is None
        else:
            assert root is not None and root * root == a


def test_text_round_trip(f9):
    assert f9.element(5).text() == "(2,1)"
    for a in all_elements(f9):
        assert parse_element(f9, a.text()) == a


def test_parse_integers_reduce(f7):
    assert parse_element(f7, "-1").value == 6
    assert parse_element(f7, "15").value == 1


def test_all_elements_order(f9):
    assert [a.value for a in all_elements(f9)] == list(range(9))


def test_odd_prime_powers():
    assert list(odd_prime_powers(30)) == [
        3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29
    ]
