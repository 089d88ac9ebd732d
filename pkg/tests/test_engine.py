import json

import numpy as np
import pytest

from lieimage import settings
from lieimage.engine import (ImageDescriptor, closed_form_image,
                             closed_form_spectrum, compute_image,
                             det_spectrum, image_bruteforce, image_reduced,
                             image_to_json, scale_labels, spectrum_to_csv)
from lieimage.enums import Family, OrbitKind, Strategy
from lieimage.errors import ArityUnsupported, BudgetExceeded, ZeroArgument
from lieimage.genset import aut_elements
from lieimage.gf import field_from_order
from lieimage.lieword import (WmnParams, WnParams, WordCorpus, ZeroBlock,
                              assign, build_engel_diff, build_w_n, evaluate,
                              parse)
from lieimage.settings import Settings
from lieimage.sl2 import (NILPOTENT, ZERO, OrbitLabel, Sl2Array, all_labels,
                          classify, conjugate)

Q_LIST = [3, 5, 7, 9, 11, 13]

WN_PARAMS = [
    WnParams(4, 2, ((2, 1),)),
    WnParams(5, 3, ((1, 2),)),
    WnParams(4, 2, ((1, 2), (3, 2))),
]


def _semisimple(field):
    return {label for label in all_labels(field) if label.kind.is_semisimple}


@pytest.mark.parametrize("q", Q_LIST)
def test_nilpotent_image(q):
    field = field_from_order(q)
    image = compute_image(build_engel_diff(2, 2 * q), field)
    assert image.labels == {ZERO, NILPOTENT}
    assert image.element_count() == q * q


@pytest.mark.parametrize("q", Q_LIST)
def test_split_plus_nilpotent_image(q):
    field = field_from_order(q)
    image = compute_image(build_engel_diff(1, 2 * q - 1), field)
    kinds = image.kinds()
    assert kinds[OrbitKind.zero] == kinds[OrbitKind.nilpotent] == 1
    assert kinds[OrbitKind.split] == (q - 1) // 2
    assert kinds[OrbitKind.anisotropic] == 0


@pytest.mark.parametrize("q", Q_LIST)
def test_all_semisimple_image(q):
    field = field_from_order(q)
    image = compute_image(build_engel_diff(q + 1, 2 * q), field)
    assert _semisimple(field) <= image.labels
    assert NILPOTENT not in image.labels
    assert len(image.semisimple_dets()) == q - 1


@pytest.mark.parametrize("q", [3, 5, 7])
@pytest.mark.parametrize("params", WN_PARAMS, ids=WnParams.text)
def test_wn_det_values_match_closed_form(q, params):
    field = field_from_order(q)
    evaluated = det_spectrum(build_w_n(params), field, Strategy.brute)
    predicted = closed_form_spectrum(Family.wn, params, field)
    assert evaluated.values() == predicted.values()
    assert evaluated.total == q**6
    assert predicted.total == q**2


@pytest.mark.parametrize("q", [3, 5, 7])
def test_closed_strategy_agrees_with_evaluation(q):
    field = field_from_order(q)
    for params in [*WN_PARAMS, WmnParams((4, 4), (2, 2), ((1, 2),))]:
        closed = compute_image(None, field, Strategy.closed, params=params)
        reduced = compute_image(None, field, Strategy.reduced, params=params)
        assert closed == reduced
        assert NILPOTENT not in closed.labels


def test_degenerate_wn_shape_has_nilpotents(f5):
    params = WnParams(3, 1, ((2, 1),))
    image = closed_form_image(params, f5)
    assert NILPOTENT in image.labels
    assert image == compute_image(None, f5, params=params)


@pytest.mark.parametrize("q", [3, 5])
def test_strategies_agree_on_corpus(q):
    field = field_from_order(q)
    for word in WordCorpus().equivalence_words():
        brute = image_bruteforce(word, field)
        assert brute == image_reduced(word, field, pivot=1)
        assert brute == image_reduced(word, field, pivot=2)


def test_budget_exceeded(f5):
    with pytest.raises(BudgetExceeded) as info:
        image_bruteforce(parse("[x1, x2]"), f5, budget=100)
    assert info.value.required == 5**6
    assert info.value.budget == 100


def test_budget_from_settings(f3, monkeypatch):
    monkeypatch.setenv("LIEIMAGE_BUDGET", "500")
    settings.use(None)
    with pytest.raises(BudgetExceeded):
        image_bruteforce(parse("[x1, x2]"), f3)


def test_reduced_budget(f3, f5):
    with pytest.raises(BudgetExceeded) as info:
        image_reduced(parse("[x1, x2]"), f5, budget=100)
    assert info.value.required == 6 * 5**3
    with pytest.raises(BudgetExceeded):
        det_spectrum(parse("[x1, x2]"), f3, Strategy.reduced, budget=100)
    image = compute_image(parse("[x1, x2]"), f3, budget=200)
    assert image.labels == all_labels(f3)
    with pytest.raises(BudgetExceeded):
        compute_image(parse("[x1, x2]"), f3, Strategy.brute, budget=200)


def test_reduction_needs_two_variables(f3):
    with pytest.raises(ArityUnsupported):
        image_reduced(parse("[x1, [x2, x3]]"), f3)
    with pytest.raises(ArityUnsupported):
        image_reduced(parse("[x1, x2]"), f3, pivot=3)


def test_reduced_falls_back_to_brute(f3):
    image = compute_image(parse("[x1, [x2, x3]]"), f3, Strategy.reduced)
    assert image.strategy == Strategy.brute
    assert ZERO in image.labels
    single = compute_image(parse("2*x1"), f3)
    assert single.labels == all_labels(f3)


def test_missing_inputs(f3):
    with pytest.raises(ValueError):
        compute_image(parse("[x1, x2]"), f3, Strategy.closed)
    with pytest.raises(ValueError):
        compute_image(None, f3, Strategy.reduced)
    with pytest.raises(ValueError):
        det_spectrum(parse("[x1, x2]"), f3, Strategy.closed)
    with pytest.raises(ValueError):
        closed_form_spectrum(Family.engel_diff, (2, 4), f3)


def test_scale_labels(f5):
    labels = {ZERO, NILPOTENT, OrbitLabel.semisimple(f5.one)}
    scaled = scale_labels(labels, 2, f5)
    assert scaled == {ZERO, NILPOTENT, OrbitLabel.semisimple(f5.element(4))}
    with pytest.raises(ZeroArgument):
        scale_labels(labels, 5, f5)


def test_image_json_round_trip(f9):
    image = compute_image(build_engel_diff(1, 17), f9)
    data = json.loads(image_to_json(image))
    assert data["q"] == 9
    assert data["strategy"] == "reduced"
    restored = ImageDescriptor.from_json(data, f9)
    assert restored == image
    assert restored.word == image.word


def test_image_text(f3):
    image = compute_image(build_engel_diff(2, 6), f3)
    assert image.text() == (
        "ad(x1, 2, x2) - ad(x1, 6, x2) over F_3 [reduced]: "
        "{zero, nilpotent}"
    )


def test_spectrum_csv(f3):
    spectrum = det_spectrum(build_engel_diff(2, 6), f3)
    lines = spectrum_to_csv(spectrum).splitlines()
    assert lines[0] == "det,count"
    assert lines[1:] == ["0,108"]


def test_descriptor_equality_ignores_word_and_strategy(f3):
    a = ImageDescriptor(frozenset({ZERO}), 3, "x1", Strategy.brute)
    b = ImageDescriptor(frozenset({ZERO}), 3, "[x1, x2]", Strategy.closed)
    assert a == b
    assert len({a, b}) == 1
    assert a != ImageDescriptor(frozenset({ZERO}), 5, "x1", Strategy.brute)


def test_worker_pool_matches_serial(f5):
    custom = Settings.with_defaults()
    custom.update(chunk_size=1024)
    settings.use(custom)
    word = parse("[x1, x2] - ad(x1, 3, x2)")
    serial = det_spectrum(word, f5, Strategy.brute, jobs=1)
    pooled = det_spectrum(word, f5, Strategy.brute, jobs=2)
    assert serial.counts == pooled.counts
    assert image_bruteforce(word, f5, jobs=2) == \
        image_bruteforce(word, f5, jobs=1)


def test_w0_law_reaches_both_square_classes(f7):
    params = WmnParams((4, 4, 4), (2, 2, 2), ((1, 2),), ZeroBlock(3, 1, 2, 1))
    assert not params.violations()
    spectrum = closed_form_spectrum(Family.w0mn, params, f7)
    assert spectrum.total == 49
    assert 0 in spectrum.values()
    kinds = {label.kind for label in spectrum.labels()}
    assert kinds == {OrbitKind.split, OrbitKind.anisotropic}


@pytest.mark.parametrize("q", [3, 5, 7])
def test_image_closed_under_conjugation(q):
    field = field_from_order(q)
    rng = np.random.default_rng(q)
    auts = aut_elements(field)
    word = build_engel_diff(1, 2 * q - 1)
    image = compute_image(word, field)
    a = Sl2Array.from_ints(field, *rng.integers(0, q, (3, 100)))
    x = Sl2Array.from_ints(field, *rng.integers(0, q, (3, 100)))
    outputs = evaluate(word, assign(a, x))
    for i, g_index in enumerate(rng.integers(0, len(auts), 100)):
        moved = conjugate(auts[int(g_index)], outputs.item((i,)))
        assert classify(moved) in image.labels
