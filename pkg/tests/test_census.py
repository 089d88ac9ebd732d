import pytest

from lieimage.census import (PropositionCatalogue, all_semisimple_labels,
                             anisotropic_scale, family_params,
                             find_dirichlet_prime, gamma_power_labels,
                             missed_values_count, n_s, orbit_census,
                             poly_value_set, proposition_id, run_suite,
                             s_alpha_table, single_orbit_word, split_labels,
                             verify)
from lieimage.constants import DIRICHLET_CASES
from lieimage.engine import compute_image
from lieimage.enums import Family, OrbitKind, PropositionId, Status, Strategy
from lieimage.errors import (HypothesisViolation, InapplicableAtQ,
                             InvalidExponent, NoWitnessInBudget,
                             UnknownProposition, ZeroArgument)
from lieimage.gf import all_elements, field_from_order, odd_prime_powers
from lieimage.lieword import WmnParams, WnParams
from lieimage.sl2 import ZERO, OrbitLabel

SMALL_QS = list(odd_prime_powers(31))
LARGE_QS = [q for q in odd_prime_powers(101) if q > 31]


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11])
def test_orbit_census(q):
    report = orbit_census(field_from_order(q))
    assert report.agrees
    assert report.formula == (1, 1, (q - 1) // 2, (q - 1) // 2)


def _check_n_s(q):
    field = field_from_order(q)
    for a in all_elements(field)[1:]:
        report = n_s(a)
        assert report.agrees, report.text()


@pytest.mark.parametrize("q", SMALL_QS)
def test_n_s(q):
    _check_n_s(q)


@pytest.mark.slow
@pytest.mark.parametrize("q", LARGE_QS)
def test_n_s_large(q):
    _check_n_s(q)


def test_n_s_zero(f7):
    with pytest.raises(ZeroArgument):
        n_s(f7.zero)


def _check_s_alpha(q):
    report = s_alpha_table(field_from_order(q))
    assert report.agrees, report.text()
    s = report.formula
    assert s[1] + 2 * s[2] + 3 * s[3] + 4 * s[4] == q


@pytest.mark.parametrize("q", SMALL_QS)
def test_s_alpha(q):
    _check_s_alpha(q)


@pytest.mark.slow
@pytest.mark.parametrize("q", LARGE_QS)
def test_s_alpha_large(q):
    _check_s_alpha(q)


def test_s_alpha_values(f3, f7):
    assert s_alpha_table(f7).formula == (1, 0, 2, 1, 0)
    assert s_alpha_table(f3).formula == (0, 1, 1, 0, 0)


def test_polynomial_values():
    f29 = field_from_order(29)
    assert missed_values_count(f29, 7) == 4
    assert 0 in poly_value_set(f29, 7)
    with pytest.raises(InvalidExponent):
        poly_value_set(f29, 0)


def test_semisimple_labels(f7):
    assert len(all_semisimple_labels(f7)) == 6
    assert {label.det.value for label in split_labels(f7)} == {3, 5, 6}


def test_gamma_power_labels(f7):
    labels = gamma_power_labels(f7, 3, nonsquares_only=False)
    assert labels == {
        OrbitLabel.semisimple(f7.element(5)),
        OrbitLabel.semisimple(f7.element(2)),
    }
    assert gamma_power_labels(f7, 3, nonsquares_only=True) == {
        OrbitLabel.semisimple(f7.element(2))
    }


@pytest.mark.parametrize("prop_id", [
    PropositionId.nilpotent_image,
    PropositionId.split_plus_nilpotent,
    PropositionId.all_semisimple,
    PropositionId.wn_determinant,
    PropositionId.wmn_determinant,
])
@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_swept_statements_pass(prop_id, q):
    report = verify(prop_id, field_from_order(q))
    assert report.passed, report.text()
    assert report.checks["image"]


@pytest.mark.parametrize("q", [3, 5, 7])
def test_engel_commutator_trichotomy(q):
    field = field_from_order(q)
    for i in range(2, 7):
        for j in range(1, i):
            report = verify(
                PropositionId.engel_commutator_trichotomy, field, (i, j)
            )
            assert report.passed, report.text()


def test_wn_determinant_with_params(f5):
    report = verify(
        "wn-determinant", f5, WnParams(4, 2, ((1, 2), (3, 2)))
    )
    assert report.passed
    assert report.checks["det values"]


@pytest.mark.parametrize("q", [7, 11])
def test_missed_orbits(q):
    report = verify(PropositionId.missed_orbits, field_from_order(q))
    assert report.passed, report.text()
    missed = all_semisimple_labels(field_from_order(q)) - \
        report.computed.labels
    expected = 2 if q == 11 else (q + 1) // 4
    assert len(missed) == expected
    split = sum(1 for label in missed if label.kind == OrbitKind.split)
    assert 2 * split == expected


@pytest.mark.slow
def test_missed_orbits_q23():
    report = verify(PropositionId.missed_orbits, field_from_order(23))
    assert report.passed, report.text()


@pytest.mark.slow
def test_q29_example():
    report = verify(PropositionId.q29_example)
    assert report.q == 29
    assert report.passed, report.text()
    assert report.checks["polynomial misses 4 values"]


@pytest.mark.parametrize("q", [3, 5, 13])
def test_missed_orbits_inapplicable(q):
    report = verify(PropositionId.missed_orbits, field_from_order(q))
    assert report.status == Status.inapplicable
    assert report.reason


def test_odd_gamma_orbits(f7):
    report = verify(PropositionId.odd_gamma_orbits, f7, gamma=3)
    assert report.passed, report.text()
    assert report.checks["2 semisimple orbits"]
    kinds = report.computed.kinds()
    assert kinds[OrbitKind.split] == kinds[OrbitKind.anisotropic] == 1


def test_odd_gamma_single_anisotropic(f7):
    report = verify(PropositionId.odd_gamma_orbits, f7, gamma=3, c=6)
    assert report.passed, report.text()
    kinds = report.computed.kinds()
    assert kinds[OrbitKind.anisotropic] == 1
    assert kinds[OrbitKind.split] == 0


def test_odd_gamma_q11():
    report = verify(
        PropositionId.odd_gamma_orbits, field_from_order(11), gamma=5
    )
    assert report.passed, report.text()


def test_odd_gamma_without_divisor(f5):
    report = verify(PropositionId.odd_gamma_orbits, f5)
    assert report.status == Status.inapplicable


def test_odd_gamma_rejects_mixed_differences(f7):
    params = WmnParams((5, 3, 3, 3, 3, 3), (1,) * 6, ((1, 2),) * 3)
    assert not params.violations()
    with pytest.raises(HypothesisViolation):
        verify(PropositionId.odd_gamma_orbits, f7, params)


def test_q3mod4_at_three(f3):
    for i in range(4, 11):
        for j in range(3, i):
            if (i - j) % 4 != 2:
                continue
            report = verify(PropositionId.q3mod4_two_orbits, f3, (i, j))
            assert report.passed, report.text()
    with pytest.raises(HypothesisViolation):
        verify(PropositionId.q3mod4_two_orbits, f3, (4, 1))


@pytest.mark.parametrize("q", [7, 11])
def test_q3mod4_two_orbits(q):
    report = verify(PropositionId.q3mod4_two_orbits, field_from_order(q))
    assert report.passed, report.text()


def test_q3mod4_inapplicable(f5):
    report = verify(PropositionId.q3mod4_two_orbits, f5)
    assert report.status == Status.inapplicable


@pytest.mark.parametrize("q", [7, 11])
def test_single_anisotropic_orbit(q):
    report = verify(PropositionId.single_aniso_orbit, field_from_order(q))
    assert report.passed, report.text()
    assert report.checks["every anisotropic orbit by scaling"]


@pytest.mark.parametrize("q", [3, 5, 9])
def test_single_anisotropic_orbit_inapplicable(q):
    report = verify(PropositionId.single_aniso_orbit, field_from_order(q))
    assert report.status == Status.inapplicable


def test_single_orbit_word(f7):
    target = f7.element(2)
    word, params, scale = single_orbit_word(f7, target)
    assert params.exponent_total % 6 == 3
    image = compute_image(word, f7)
    assert image.labels == {ZERO, OrbitLabel.semisimple(target)}
    assert f7.scalar(scale) ** 2 * f7.scalar(4) ** 2 == target
    assert anisotropic_scale(f7, target, 3) == scale
    with pytest.raises(InapplicableAtQ):
        single_orbit_word(f7, f7.element(3))


@pytest.mark.parametrize("prop_id", [
    PropositionId.even_gamma_split_orbits,
    PropositionId.single_split_orbit,
])
def test_even_gamma_is_never_applicable(prop_id, f7):
    report = verify(prop_id, f7)
    assert report.status == Status.inapplicable
    assert "odd" in report.reason


def test_dirichlet_primes():
    assert find_dirichlet_prime(2, 2) == (7, 1)
    assert find_dirichlet_prime(4, 2) == (13, 1)
    assert find_dirichlet_prime(2, 4) == (13, 1)
    assert find_dirichlet_prime(1, 4) == (7, 1)
    assert find_dirichlet_prime(2, 3) == (5, 1)
    assert find_dirichlet_prime(4, 3) == (17, 2)
    with pytest.raises(NoWitnessInBudget) as info:
        find_dirichlet_prime(2, 2, ceiling=5)
    assert info.value.budget == 5
    with pytest.raises(ValueError):
        find_dirichlet_prime(2, 5)
    with pytest.raises(ValueError):
        find_dirichlet_prime(0, 2)


@pytest.mark.parametrize("t, part", [(2, 2), (4, 2), (1, 4), (2, 4)])
def test_dirichlet_counts(t, part):
    report = verify(PropositionId.dirichlet_counts, t=t, part=part)
    assert report.passed, report.text()
    assert report.params.startswith(f"t={t} part={part}")


def test_dirichlet_part_three_inapplicable():
    report = verify(PropositionId.dirichlet_counts, t=2, part=3)
    assert report.status == Status.inapplicable


def test_dirichlet_needs_even_t():
    with pytest.raises(HypothesisViolation):
        verify(PropositionId.dirichlet_counts, t=3, part=2)


def test_verify_argument_errors(f5):
    with pytest.raises(UnknownProposition):
        verify("no-such-statement", f5)
    with pytest.raises(UnknownProposition):
        proposition_id("no-such-statement")
    with pytest.raises(ValueError):
        verify(PropositionId.nilpotent_image, f5, strategy=Strategy.closed)
    with pytest.raises(ValueError):
        verify(PropositionId.nilpotent_image)


def test_brute_strategy(f3):
    report = verify(PropositionId.nilpotent_image, f3, strategy=Strategy.brute)
    assert report.passed
    assert report.computed.strategy == Strategy.brute


def test_report_serialisation(f3):
    report = verify("nilpotent-image", f3)
    data = report.to_json()
    assert data["id"] == "nilpotent-image"
    assert data["status"] == "pass"
    assert data["checks"]["image"] is True
    assert report.text().startswith("[pass] nilpotent-image q=3")


def test_catalogue():
    catalogue = PropositionCatalogue()
    assert catalogue.ids() == list(PropositionId)
    assert not catalogue.swept(PropositionId.q29_example)
    assert not catalogue.swept(PropositionId.dirichlet_counts)
    assert catalogue.swept(PropositionId.nilpotent_image)
    for prop_id in catalogue.ids():
        assert catalogue.title(prop_id)
        assert catalogue.claim(prop_id)


def test_run_suite_order():
    reports = run_suite(
        ids=["nilpotent-image", "missed-orbits"], qs=[3, 7]
    )
    assert [(r.prop_id, r.q) for r in reports] == [
        (PropositionId.nilpotent_image, 3),
        (PropositionId.nilpotent_image, 7),
        (PropositionId.missed_orbits, 3),
        (PropositionId.missed_orbits, 7),
    ]
    assert [r.status for r in reports] == [
        Status.passed, Status.passed, Status.inapplicable, Status.passed
    ]


def test_run_suite_dirichlet_cases():
    reports = run_suite(ids=["dirichlet-counts"])
    assert len(reports) == len(DIRICHLET_CASES)
    assert all(r.status != Status.failed for r in reports)


def test_family_params():
    wn = WnParams(4, 2, ((2, 1),))
    assert family_params(Family.wn, wn) is wn
    wmn = WmnParams((4, 4), (2, 2), ((1, 2),))
    assert family_params(Family.wmn, wmn) == wmn
    with pytest.raises(HypothesisViolation):
        family_params(Family.wmn, wn)
    with pytest.raises(HypothesisViolation):
        family_params(Family.engel_diff, wn)
