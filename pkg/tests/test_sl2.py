from collections import Counter

import numpy as np
import pytest

from lieimage.enums import OrbitKind
from lieimage.errors import FieldMismatch, InvalidExponent, SingularMatrix
from lieimage.genset import aut_elements
from lieimage.gf import field_from_order, to_ints
from lieimage.sl2 import (NILPOTENT, ZERO, Gl2Element, OrbitLabel, Sl2Array,
                          Sl2Element, ad_pow, ad_pow_iterated, all_labels,
                          all_sl2, basis, bracket, classify, conjugate, det,
                          labels_of, matrix_pow_repr, orbit_representatives,
                          orbit_size, parse_sl2)


def _is_zero(x: Sl2Array) -> bool:
    a, b, c = x.int_coords()
    return not (a.any() or b.any() or c.any())


def test_basis_brackets(f5):
    h, e, f = basis(f5)
    assert bracket(h, e) == 2 * e
    assert bracket(h, f) == -(2 * f)
    assert bracket(e, f) == h


def test_antisymmetry_and_jacobi(f3):
    everything = all_sl2(f3)
    x = everything.reshape(27, 1, 1)
    y = everything.reshape(1, 27, 1)
    z = everything.reshape(1, 1, 27)
    assert _is_zero(bracket(x, y) + bracket(y, x))
    jacobi = (
        bracket(x, bracket(y, z))
        + bracket(y, bracket(z, x))
        + bracket(z, bracket(x, y))
    )
    assert _is_zero(jacobi)


def test_det(f5):
    h, e, f = basis(f5)
    assert det(h) == f5.scalar(-1)
    assert det(e).is_zero()
    assert det(e + f) == f5.scalar(-1)


@pytest.mark.parametrize("q", [5, 9])
def test_ad_pow_closed_form_matches_iteration(q):
    field = field_from_order(q)
    everything = all_sl2(field)
    a = everything.reshape(-1, 1)
    x = everything.reshape(1, -1)
    for n in range(1, 11):
        assert _is_zero(ad_pow(a, n, x) - ad_pow_iterated(a, n, x))


def test_ad_pow_exponent(f3):
    h, e, _ = basis(f3)
    with pytest.raises(InvalidExponent):
        ad_pow(h, 0, e)
    with pytest.raises(InvalidExponent):
        ad_pow_iterated(h, 0, e)


def test_matrix_pow_repr(f7):
    h, e, f = basis(f7)
    assert matrix_pow_repr(h, 0) == (f7.one, False)
    assert matrix_pow_repr(h, 2) == (f7.one, False)
    assert matrix_pow_repr(h, 3) == (f7.one, True)
    # (e + 2f)^2 = 2 I
    assert matrix_pow_repr(e + 2 * f, 4) == (f7.element(4), False)
    with pytest.raises(InvalidExponent):
        matrix_pow_repr(h, -1)


def test_classify(f7):
    h, e, f = basis(f7)
    assert classify(Sl2Element.zero(f7)) == ZERO
    assert classify(e) == NILPOTENT
    assert classify(h).kind == OrbitKind.split
    for a in range(1, 7):
        label = classify(e + f7.element(a) * f)
        square = a in (1, 2, 4)
        assert label.kind == (
            OrbitKind.split if square else OrbitKind.anisotropic
        )
        assert label.det == f7.scalar(-a)


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_every_label_occurs(q):
    field = field_from_order(q)
    labels = labels_of(all_sl2(field))
    assert labels == all_labels(field)
    assert len(labels) == q + 1
    assert sum(orbit_size(label, q) for label in labels) == q**3


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_orbit_sizes_by_determinant(q):
    field = field_from_order(q)
    everything = all_sl2(field)
    a, b, c = everything.int_coords()
    dets = to_ints(det(everything))
    counts = Counter(int(d) for d in dets)
    nonzero = (a != 0) | (b != 0) | (c != 0)
    assert counts[0] - 1 == orbit_size(NILPOTENT, q)
    assert np.count_nonzero(~nonzero) == 1
    for value in range(1, q):
        label = OrbitLabel.semisimple(field.element(value))
        assert counts[value] == orbit_size(label, q)


def test_representatives_cover_every_orbit(f9):
    reps = orbit_representatives(f9)
    assert len(reps) == 10
    assert {classify(x) for x in reps} == all_labels(f9)


def test_conjugation_preserves_structure(f5):
    everything = all_sl2(f5)
    x = everything.reshape(-1, 1)
    y = everything.reshape(1, -1)
    g = Gl2Element.from_scalars(f5, 1, 2, 3, 4)
    gx, gy = conjugate(g, x), conjugate(g, y)
    assert _is_zero(conjugate(g, bracket(x, y)) - bracket(gx, gy))
    assert (to_ints(det(gx)) == to_ints(det(x))).all()


def test_singular_conjugation(f5):
    h, _, _ = basis(f5)
    with pytest.raises(SingularMatrix):
        conjugate(Gl2Element.from_scalars(f5, 1, 2, 2, 4), h)


def test_encode_orders_all_elements(f3):
    assert list(all_sl2(f3).encode()) == list(range(27))


def test_fields_must_agree(f3, f5):
    with pytest.raises(FieldMismatch):
        bracket(basis(f3)[0], basis(f5)[1])


def test_parse_sl2(f9):
    x = parse_sl2(f9, "(1,2),0,-1")
    assert (x.a.value, x.b.value, x.c.value) == (7, 0, 2)
    with pytest.raises(ValueError):
        parse_sl2(f9, "1,2")


def test_label_validation(f5):
    with pytest.raises(ValueError):
        OrbitLabel(OrbitKind.split)
    with pytest.raises(ValueError):
        OrbitLabel(OrbitKind.zero, f5.one)
    with pytest.raises(ValueError):
        OrbitLabel.semisimple(f5.zero)
    assert OrbitLabel.semisimple(f5.element(2)).text() == "anisotropic(2)"
    assert OrbitLabel.semisimple(f5.one).text() == "split(1)"


@pytest.mark.parametrize("q", [3, 5, 7])
def test_classify_is_conjugation_invariant(q):
    field = field_from_order(q)
    rng = np.random.default_rng(q)
    auts = aut_elements(field)
    everything = all_sl2(field)
    samples = zip(
        rng.integers(0, len(auts), 100), rng.integers(0, q**3, 100)
    )
    for g_index, code in samples:
        x = everything.item((int(code),))
        assert classify(conjugate(auts[int(g_index)], x)) == classify(x)
