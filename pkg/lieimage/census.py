"""
Counting results with their enumeration oracles, and the verification
suites that check each image statement against the engine.
"""
import time
try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path
from typing import Any, Callable, Iterable, Optional, Sequence

import galois
import numpy as np

from . import logger, settings
from .constants import DIRICHLET_CASES
from .engine import (ImageDescriptor, closed_form_image,
                     closed_form_spectrum, compute_image, det_spectrum,
                     scale_labels)
from .enums import (Family, OrbitKind, PropositionId, SearchGoal, Status,
                    Strategy)
from .errors import (BudgetExceeded, HypothesisViolation, InapplicableAtQ,
                     InvalidExponent, NoWitnessInBudget, UnknownProposition,
                     ZeroArgument)
from .gf import (FieldDescriptor, FieldElement, characters,
                 field_from_order, make_field, quadratic_character, sqrt,
                 square_table, to_ints)
from .lieword import (LieWord, Params, Scalar, WmnParams, WnParams,
                      build_engel_commutator, build_engel_diff, build_w0_mn,
                      build_w_mn, build_w_n, family_of, render,
                      search_params)
from .paths import PROPOSITIONS_PATH
from .sl2 import (NILPOTENT, ZERO, OrbitLabel, all_sl2, labels_from_dets,
                  labels_of)


@dataclass(frozen=True)
class CountingReport:
    q: int
    name: str
    formula: Any
    oracle: Any

    @property
    def agrees(self) -> bool:
        return bool(self.formula == self.oracle)

    def to_json(self) -> dict[str, Any]:
        return {
            "q": self.q,
            "name": self.name,
            "formula": self.formula,
            "oracle": self.oracle,
            "agrees": self.agrees,
        }

    def text(self) -> str:
        mark = "ok" if self.agrees else "MISMATCH"
        return (
            f"{self.name} over F_{self.q}: formula {self.formula}, "
            f"oracle {self.oracle} [{mark}]"
        )


def _eta(field: FieldDescriptor, k: int) -> int:
    return quadratic_character(field.scalar(k))


def orbit_census(field: FieldDescriptor) -> CountingReport:
    """
    Orbit counts (zero, nilpotent, split, anisotropic) against the labels
    met when classifying every element.
    """
    half = (field.q - 1) // 2
    kinds = [label.kind for label in labels_of(all_sl2(field))]
    oracle = tuple(kinds.count(kind) for kind in OrbitKind)
    return CountingReport(field.q, "orbit census", (1, 1, half, half), oracle)


def n_s(a: FieldElement) -> CountingReport:
    """
    Number of ordered pairs (u, v) of squares (0 included) with
    u + v = a.

    :raises ZeroArgument: `a` is 0.
    """
    if a.is_zero():
        raise ZeroArgument("N_S is counted for nonzero a only")
    field = a.field
    q = field.q
    formula = (q - _eta(field, -1) + 2 * quadratic_character(a) + 2) // 4
    squares = square_table(field)
    elements = field.elements_array()
    differences = to_ints(field.gf(a.value) - elements)
    oracle = int(np.count_nonzero(squares & squares[differences]))
    return CountingReport(q, f"N_S({a.text()})", formula, oracle)


def _f_values(field: FieldDescriptor) -> np.ndarray:
    # x^2 (1 - 4x)^2 over all x
    x = field.elements_array()
    g = x * (field.constant(1) - field.constant(4) * x)
    return to_ints(g * g)


def s_alpha_table(field: FieldDescriptor) -> CountingReport:
    """
    s_alpha = number of squares (0 included) with exactly alpha preimages
    under x^2 (1 - 4x)^2, for alpha = 0 .. 4.
    """
    q = field.q
    eta2, eta_minus1 = _eta(field, 2), _eta(field, -1)
    formula = (
        (q + 2 * eta2 - eta_minus1 - 2) // 8,
        (1 - eta2) // 2,
        (q + 2 + eta_minus1) // 4,
        (1 + eta2) // 2,
        (q - eta_minus1 - 2 * eta2 - 6) // 8,
    )
    fibres = np.bincount(_f_values(field), minlength=q)
    square_fibres = fibres[square_table(field)]
    top = max(4, int(square_fibres.max()))
    oracle = tuple(
        int(np.count_nonzero(square_fibres == alpha))
        for alpha in range(top + 1)
    )
    return CountingReport(q, "s_alpha", formula, oracle)


def poly_value_set(field: FieldDescriptor, d: int) -> set[int]:
    """
    Values of x^2 (1 - 4x)^2 y^d over F_q^2.
    """
    if d < 1:
        raise InvalidExponent(f"y exponent must be at least 1, got {d}")
    f = field.gf(_f_values(field)).reshape(-1, 1)
    y = field.elements_array().reshape(1, -1)
    return {int(v) for v in np.unique(to_ints(f * y**d))}


def missed_values_count(field: FieldDescriptor, d: int) -> int:
    return field.q - len(poly_value_set(field, d))


# Verification

@dataclass
class VerificationReport:
    prop_id: PropositionId
    q: int
    word: str
    params: str
    expected: Optional[ImageDescriptor]
    computed: Optional[ImageDescriptor]
    checks: dict[str, bool] = dataclass_field(default_factory=dict)
    status: Status = Status.failed
    reason: str = ""
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == Status.passed

    def to_json(self) -> dict[str, Any]:
        return {
            "id": str(self.prop_id),
            "q": self.q,
            "word": self.word,
            "params": self.params,
            "expected": None if self.expected is None
            else self.expected.to_json(),
            "computed": None if self.computed is None
            else self.computed.to_json(),
            "checks": self.checks,
            "status": str(self.status),
            "reason": self.reason,
            "seconds": round(self.seconds, 6),
        }

    def text(self) -> str:
        line = f"[{self.status}] {self.prop_id} q={self.q}"
        if self.params:
            line += f" ({self.params})"
        if self.reason:
            line += f": {self.reason}"
        failed = [name for name, ok in self.checks.items() if not ok]
        if failed:
            line += " failed checks: " + ", ".join(failed)
        return line


@dataclass
class _Outcome:
    q: int
    word: str
    params: str
    expected: ImageDescriptor
    computed: ImageDescriptor
    checks: dict[str, bool]


@dataclass(frozen=True)
class _Context:
    strategy: Strategy
    jobs: Optional[int]

    def image(self, word: LieWord, field: FieldDescriptor) -> ImageDescriptor:
        return compute_image(word, field, self.strategy, jobs=self.jobs)


def _descriptor(
    labels: Iterable[OrbitLabel], field: FieldDescriptor, word: LieWord
) -> ImageDescriptor:
    return ImageDescriptor(
        frozenset(labels), field.q, render(word), Strategy.closed
    )


def all_semisimple_labels(field: FieldDescriptor) -> set[OrbitLabel]:
    return labels_from_dets(field, np.arange(1, field.q, dtype=np.int64))


def split_labels(field: FieldDescriptor) -> set[OrbitLabel]:
    return {
        label for label in all_semisimple_labels(field)
        if label.kind == OrbitKind.split
    }


def _semisimple_missed(
    field: FieldDescriptor, image: ImageDescriptor
) -> set[OrbitLabel]:
    return all_semisimple_labels(field) - image.labels


def _engel_pair(
    params: Optional[Any], default: tuple[int, int]
) -> tuple[int, int]:
    if params is None:
        return default
    i, j = params
    return int(i), int(j)


def _verify_nilpotent_image(
    field: FieldDescriptor, params: Any, ctx: _Context, options: dict
) -> _Outcome:
    q = field.q
    i, j = _engel_pair(params, (2, 2 * q))
    word = build_engel_diff(i, j)
    computed = ctx.image(word, field)
    return _Outcome(
        q, render(word), f"i={i} j={j}",
        _descriptor({ZERO, NILPOTENT}, field, word), computed,
        {"element count q^2": computed.element_count() == q * q},
    )


def _verify_split_plus_nilpotent(
    field: FieldDescriptor, params: Any, ctx: _Context, options: dict
) -> _Outcome:
    i, j = _engel_pair(params, (1, 2 * field.q - 1))
    word = build_engel_diff(i, j)
    expected = {ZERO, NILPOTENT} | split_labels(field)
    return _Outcome(
        field.q, render(word), f"i={i} j={j}",
        _descriptor(expected, field, word), ctx.image(word, field), {},
    )


def _verify_all_semisimple(
    field: FieldDescriptor, params: Any, ctx: _Context, options: dict
) -> _Outcome:
    i, j = _engel_pair(params, (field.q + 1, 2 * field.q))
    word = build_engel_diff(i, j)
    semisimple = all_semisimple_labels(field)
    computed = ctx.image(word, field)
    return _Outcome(
        field.q, render(word), f"i={i} j={j}",
        _descriptor({ZERO} | semisimple, field, word), computed,
        {
            "every semisimple orbit": semisimple <= computed.labels,
            "no nilpotent": NILPOTENT not in computed.labels,
        },
    )


def _verify_engel_commutator(
    field: FieldDescriptor, params: Any, ctx: _Context, options: dict
) -> _Outcome:
    i, j = _engel_pair(params, (2, 1))
    word = build_engel_commutator(i, j)
    if (i + j) % 2 == 0:
        expected = {ZERO}
    elif i + j == 3:
        expected = {ZERO, NILPOTENT} | all_semisimple_labels(field)
    else:
        expected = {ZERO} | all_semisimple_labels(field)
    return _Outcome(
        field.q, render(word), f"i={i} j={j}",
        _descriptor(expected, field, word), ctx.image(word, field), {},
    )


def _det_values_check(
    word: LieWord, params: Params, field: FieldDescriptor, ctx: _Context
) -> bool:
    evaluated = det_spectrum(word, field, Strategy.reduced, jobs=ctx.jobs)
    predicted = closed_form_spectrum(family_of(params), params, field)
    return evaluated.values() == predicted.values()


def _verify_wn_determinant(
    field: FieldDescriptor, params: Any, ctx: _Context, options: dict
) -> _Outcome:
    p = WnParams(4, 2, ((2, 1),)) if params is None else params
    word = build_w_n(p)
    return _Outcome(
        field.q, render(word), p.text(), closed_form_image(p, field),
        ctx.image(word, field),
        {"det values": _det_values_check(word, p, field, ctx)},
    )


def _missed_checks(
    field: FieldDescriptor, computed: ImageDescriptor, expected_count: int
) -> dict[str, bool]:
    missed = _semisimple_missed(field, computed)
    split = sum(1 for label in missed if label.kind == OrbitKind.split)
    return {
        f"misses {expected_count} semisimple orbits":
            len(missed) == expected_count,
        "missed split = missed anisotropic": 2 * split == len(missed),
        "no nilpotent": NILPOTENT not in computed.labels,
    }


def _verify_missed_orbits(
    field: FieldDescriptor, params: Any, ctx: _Context, options: dict
) -> _Outcome:
    q = field.q
    if q % 8 not in (3, 7) or q <= 3:
        raise InapplicableAtQ(f"q = {q} is not 3 or 7 mod 8 with q > 3")
    p = search_params(SearchGoal.missed_orbits, field) \
        if params is None else params
    word = build_w_n(p)
    computed = ctx.image(word, field)
    count = (q - 3) // 4 if q % 8 == 3 else (q + 1) // 4
    return _Outcome(
        q, render(word), p.text(), closed_form_image(p, field), computed,
        _missed_checks(field, computed, count),
    )


def _verify_q29_example(
    field: FieldDescriptor, params: Any, ctx: _Context, options: dict
) -> _Outcome:
    if field.q != 29:
        raise InapplicableAtQ("The example is stated for q = 29")
    p = search_params(SearchGoal.q29_example, field) \
        if params is None else params
    word = build_w_n(p)
    computed = ctx.image(word, field)
    missed = missed_values_count(field, 2 * p.n + 1)
    checks = _missed_checks(field, computed, missed)
    checks["polynomial misses 4 values"] = missed == 4
    return _Outcome(
        field.q, render(word), p.text(), closed_form_image(p, field),
        computed, checks,
    )


def _verify_wmn_determinant(
    field: FieldDescriptor, params: Any, ctx: _Context, options: dict
) -> _Outcome:
    p = WmnParams((4, 4), (2, 2), ((1, 2),)) if params is None else params
    p = p.without_zero_block()
    word = build_w_mn(p)
    return _Outcome(
        field.q, render(word), p.text(), closed_form_image(p, field),
        ctx.image(word, field),
        {"det values": _det_values_check(word, p, field, ctx)},
    )


def _common_difference(p: WmnParams) -> int:
    differences = {alpha - beta for alpha, beta in zip(p.alphas, p.betas)}
    if len(differences) != 1:
        raise HypothesisViolation(["alpha_s - beta_s equal for all s"])
    return differences.pop()


def _odd_gamma_setup(
    field: FieldDescriptor,
    params: Optional[WmnParams],
    gamma: Optional[int],
    c: int,
) -> tuple[WmnParams, int, int]:
    q = field.q
    if params is None:
        p = search_params(SearchGoal.odd_gamma, field, gamma=gamma, c=c)
        assert isinstance(p, WmnParams)
    else:
        p = params.without_zero_block().validate()
    gamma = p.exponent_total % (q - 1)
    c = _common_difference(p)
    violations = []
    if (2 * p.m) % (q - 1):
        violations.append("2m = 0 mod (q - 1)")
    if (2 * p.n + p.m) % (q - 1):
        violations.append("2n + m = 0 mod (q - 1)")
    if gamma % 2 == 0 or gamma <= 1:
        violations.append("sum(beta) + sigma = odd gamma > 1 mod (q - 1)")
    if c not in (2, q - 1):
        violations.append("alpha_s - beta_s = 2 or q - 1")
    if violations:
        raise HypothesisViolation(violations)
    return p, gamma, c


def gamma_power_labels(
    field: FieldDescriptor, gamma: int, nonsquares_only: bool
) -> set[OrbitLabel]:
    """
    Labels of the determinants -4^(gamma-1) a^gamma, a in F_q^* (or only
    the nonsquares).
    """
    a = field.elements_array()[1:]
    if nonsquares_only:
        a = a[characters(field, to_ints(a)) == -1]
    scale = field.constant(-pow(4, gamma - 1, field.p))
    return labels_from_dets(field, to_ints(scale * a**gamma))


def _kind_count(labels: Iterable[OrbitLabel], kind: OrbitKind) -> int:
    return sum(1 for label in labels if label.kind == kind)


def _odd_gamma_outcome(
    field: FieldDescriptor, p: WmnParams, gamma: int, c: int, ctx: _Context
) -> _Outcome:
    q = field.q
    word = build_w_mn(p)
    computed = ctx.image(word, field)
    expected = {ZERO} | gamma_power_labels(field, gamma, c == q - 1)
    split = _kind_count(computed.labels, OrbitKind.split)
    aniso = _kind_count(computed.labels, OrbitKind.anisotropic)
    if c == 2:
        checks = {
            f"{(q - 1) // gamma} semisimple orbits":
                split + aniso == (q - 1) // gamma,
            "half split, half anisotropic": split == aniso,
        }
    else:
        checks = {
            f"{(q - 1) // (2 * gamma)} semisimple orbits":
                aniso == (q - 1) // (2 * gamma),
            "all anisotropic": split == 0,
        }
    checks["no nilpotent"] = NILPOTENT not in computed.labels
    return _Outcome(
        q, render(word), f"gamma={gamma} c={c} {p.text()}",
        _descriptor(expected, field, word), computed, checks,
    )


def _verify_odd_gamma(
    field: FieldDescriptor, params: Any, ctx: _Context, options: dict
) -> _Outcome:
    gamma = options.get("gamma")
    p, gamma, c = _odd_gamma_setup(
        field, params, None if gamma is None else int(gamma),
        int(options.get("c", 2)),
    )
    return _odd_gamma_outcome(field, p, gamma, c, ctx)


def _verify_q3mod4(
    field: FieldDescriptor, params: Any, ctx: _Context, options: dict
) -> _Outcome:
    q = field.q
    if q % 4 != 3:
        raise InapplicableAtQ(f"q = {q} is not 3 mod 4")
    if q == 3:
        i, j = _engel_pair(params, (5, 3))
        if not 2 < j < i or (i - j) % 4 != 2:
            raise HypothesisViolation(["2 < j < i", "i - j = 2 mod 4"])
        word = build_engel_diff(i, j)
        computed = ctx.image(word, field)
        expected = {ZERO} | all_semisimple_labels(field)
        params_text = f"i={i} j={j}"
    else:
        gamma = (q - 1) // 2
        p, gamma, _ = _odd_gamma_setup(field, params, gamma, 2)
        word = build_w_mn(p)
        computed = ctx.image(word, field)
        four = field.scalar(4) ** (gamma - 1)
        expected = {
            ZERO, OrbitLabel.semisimple(-four), OrbitLabel.semisimple(four)
        }
        params_text = p.text()
    return _Outcome(
        q, render(word), params_text, _descriptor(expected, field, word),
        computed,
        {
            "one split orbit":
                _kind_count(computed.labels, OrbitKind.split) == 1,
            "one anisotropic orbit":
                _kind_count(computed.labels, OrbitKind.anisotropic) == 1,
        },
    )


def _single_aniso_requirements(field: FieldDescriptor) -> int:
    q = field.q
    if field.r != 1 or q % 4 != 3 or q <= 3:
        raise InapplicableAtQ(
            f"q = {q} is not a prime > 3 with q = 3 mod 4"
        )
    return (q - 1) // 2


def anisotropic_scale(
    field: FieldDescriptor, target_det: FieldElement, gamma: int
) -> int:
    """
    The integer s with s^2 * 4^(gamma-1) = `target_det` in F_p.

    :raises InapplicableAtQ: `target_det` is not a nonzero square.
    """
    root = sqrt(target_det)
    if root is None or root.is_zero():
        raise InapplicableAtQ(
            f"{target_det.text()} is not the determinant of an anisotropic "
            f"orbit in {field}"
        )
    return (root / field.scalar(2) ** (gamma - 1)).value


def single_orbit_word(
    field: FieldDescriptor,
    target_det: FieldElement,
    params: Optional[WmnParams] = None,
) -> tuple[LieWord, WmnParams, int]:
    """
    A word whose image is the anisotropic orbit of `target_det` with 0:
    s * w_{m,n} for an odd gamma witness with gamma = (q - 1)/2 and
    c = q - 1. The unscaled word takes the single determinant 4^(gamma-1).

    :raises InapplicableAtQ: q is not a prime = 3 mod 4 above 3, or
    `target_det` is not anisotropic.
    :return: The scaled word, the witness and the scale s.
    :rtype: tuple[LieWord, WmnParams, int]
    """
    gamma = _single_aniso_requirements(field)
    p, _, _ = _odd_gamma_setup(field, params, gamma, field.q - 1)
    scale = anisotropic_scale(field, target_det, gamma)
    return Scalar(scale, build_w_mn(p)), p, scale


def _verify_single_aniso(
    field: FieldDescriptor, params: Any, ctx: _Context, options: dict
) -> _Outcome:
    gamma = _single_aniso_requirements(field)
    targets = sorted(
        label.det.value for label in all_semisimple_labels(field)
        if label.kind == OrbitKind.anisotropic and label.det is not None
    )
    target = field.element(int(options.get("det", targets[0])))
    word, p, scale = single_orbit_word(field, target, params)
    computed = ctx.image(word, field)
    base = ctx.image(build_w_mn(p), field)
    reachable = all(
        scale_labels(
            base.labels,
            anisotropic_scale(field, field.element(det), gamma),
            field,
        ) == {ZERO, OrbitLabel.semisimple(field.element(det))}
        for det in targets
    )
    return _Outcome(
        field.q, render(word), f"scale={scale} {p.text()}",
        _descriptor({ZERO, OrbitLabel.semisimple(target)}, field, word),
        computed,
        {"every anisotropic orbit by scaling": reachable},
    )


def _even_gamma_params(
    field: FieldDescriptor, params: Any, options: dict
) -> WmnParams:
    if params is None:
        p = search_params(
            SearchGoal.even_gamma, field,
            gamma=None if "gamma" not in options else int(options["gamma"]),
        )
        assert isinstance(p, WmnParams)
        return p
    return params.validate()


def _verify_even_gamma(
    field: FieldDescriptor, params: Any, ctx: _Context, options: dict
) -> _Outcome:
    p = _even_gamma_params(field, params, options)
    word = build_w0_mn(p)
    computed = ctx.image(word, field)
    return _Outcome(
        field.q, render(word), p.text(), closed_form_image(p, field),
        computed,
        {
            "only split orbits":
                _kind_count(computed.labels, OrbitKind.anisotropic) == 0,
            "no nilpotent": NILPOTENT not in computed.labels,
        },
    )


def _verify_single_split(
    field: FieldDescriptor, params: Any, ctx: _Context, options: dict
) -> _Outcome:
    if field.r != 1:
        raise InapplicableAtQ("The split scaling is stated over F_p")
    p = _even_gamma_params(field, params, options)
    target = field.element(int(options.get("det", field.q - 1)))
    root = sqrt(-target)
    if root is None or root.is_zero():
        raise InapplicableAtQ(
            f"{target.text()} is not the determinant of a split orbit"
        )
    scale = (2 * root).value
    word = Scalar(scale, build_w0_mn(p))
    return _Outcome(
        field.q, render(word), f"scale={scale} {p.text()}",
        _descriptor({ZERO, OrbitLabel.semisimple(target)}, field, word),
        ctx.image(word, field), {},
    )


def find_dirichlet_prime(
    t: int, part: int, ceiling: Optional[int] = None
) -> tuple[int, int]:
    """
    Smallest prime p in the progression used for `part` of the
    dirichlet-counts check: (2l+1)t + 1 for part 2, 2lt + 1 for part 3 and
    4lt + 2t + 1 for part 4, with l >= 1.

    :raises NoWitnessInBudget: No such prime up to `ceiling`.
    :return: The prime and l.
    :rtype: tuple[int, int]
    """
    if t < 1:
        raise ValueError(f"t must be positive, got {t}")
    progressions: dict[int, Callable[[int], int]] = {
        2: lambda ell: (2 * ell + 1) * t + 1,
        3: lambda ell: 2 * ell * t + 1,
        4: lambda ell: 4 * ell * t + 2 * t + 1,
    }
    if part not in progressions:
        raise ValueError(f"part must be 2, 3 or 4, got {part}")
    ceiling = settings.current().prime_ceiling if ceiling is None \
        else ceiling
    ell = 1
    while (p := progressions[part](ell)) <= ceiling:
        if galois.is_prime(p):
            logger.debug(f"Progression prime for t = {t}, part {part}: {p}")
            return p, ell
        ell += 1
    raise NoWitnessInBudget(
        ceiling, f"no prime in the part {part} progression for t = {t}"
    )


def _verify_dirichlet(
    field: Optional[FieldDescriptor], params: Any, ctx: _Context,
    options: dict,
) -> _Outcome:
    t = int(options.get("t", 2))
    part = int(options.get("part", 2))
    if part == 3:
        raise InapplicableAtQ(
            "part 3 rests on the even gamma construction, whose hypotheses "
            "force an odd exponent total"
        )
    if part == 2 and t % 2:
        raise HypothesisViolation(["t even"])
    p, ell = find_dirichlet_prime(t, part, options.get("ceiling"))
    prime_field = make_field(p)
    gamma = 2 * ell + 1
    c = 2 if part == 2 else p - 1
    witness, gamma, c = _odd_gamma_setup(prime_field, params, gamma, c)
    outcome = _odd_gamma_outcome(prime_field, witness, gamma, c, ctx)
    split = _kind_count(outcome.computed.labels, OrbitKind.split)
    aniso = _kind_count(outcome.computed.labels, OrbitKind.anisotropic)
    if part == 2:
        outcome.checks[f"{t // 2} split and {t // 2} anisotropic"] = (
            split == aniso == t // 2
        )
    else:
        outcome.checks[f"{t} anisotropic, no split"] = (
            aniso == t and split == 0
        )
    outcome.params = f"t={t} part={part} p={p} {outcome.params}"
    return outcome


_Verifier = Callable[[Any, Any, _Context, dict], _Outcome]

_VERIFIERS: dict[PropositionId, _Verifier] = {
    PropositionId.nilpotent_image: _verify_nilpotent_image,
    PropositionId.split_plus_nilpotent: _verify_split_plus_nilpotent,
    PropositionId.all_semisimple: _verify_all_semisimple,
    PropositionId.engel_commutator_trichotomy: _verify_engel_commutator,
    PropositionId.wn_determinant: _verify_wn_determinant,
    PropositionId.missed_orbits: _verify_missed_orbits,
    PropositionId.q29_example: _verify_q29_example,
    PropositionId.wmn_determinant: _verify_wmn_determinant,
    PropositionId.odd_gamma_orbits: _verify_odd_gamma,
    PropositionId.q3mod4_two_orbits: _verify_q3mod4,
    PropositionId.single_aniso_orbit: _verify_single_aniso,
    PropositionId.even_gamma_split_orbits: _verify_even_gamma,
    PropositionId.single_split_orbit: _verify_single_split,
    PropositionId.dirichlet_counts: _verify_dirichlet,
}

# Ids that choose their own field
_OWN_FIELD = {PropositionId.dirichlet_counts}


def proposition_id(value: str | PropositionId) -> PropositionId:
    try:
        return PropositionId(value)
    except ValueError:
        raise UnknownProposition(f"Unknown proposition id {value!r}") \
            from None


def verify(
    prop_id: str | PropositionId,
    field: Optional[FieldDescriptor] = None,
    params: Optional[Any] = None,
    strategy: Strategy = Strategy.reduced,
    jobs: Optional[int] = None,
    **options: Any,
) -> VerificationReport:
    """
    Check one image statement over one field.

    :param prop_id: The statement id.
    :type prop_id: str | PropositionId
    :param field: The field. Ignored by the arithmetic progression suite,
    which picks its own prime; q = 29 is used for the q = 29 example when
    omitted.
    :type field: Optional[FieldDescriptor]
    :param params: Family parameters, or an ``(i, j)`` pair for the Engel
    words. Searched or defaulted when omitted.
    :type params: Optional[Any]
    :param strategy: Engine strategy for the computed image.
    :type strategy: Strategy
    :param jobs: Worker processes, default from settings.
    :type jobs: Optional[int]
    :param options: Extra statement options: ``gamma`` and ``c`` for the
    gamma statements, ``det`` for the single orbit corollaries, ``t``,
    ``part`` and ``ceiling`` for the progression suite.
    :raises UnknownProposition: `prop_id` is not known.
    :raises NoWitnessInBudget: The witness search ran out of budget.
    :return: The report. Statements whose side conditions cannot hold at
    this q are reported as inapplicable.
    :rtype: VerificationReport
    """
    prop_id = proposition_id(prop_id)
    if strategy == Strategy.closed:
        raise ValueError("Verification needs an evaluating strategy")
    if field is None:
        if prop_id == PropositionId.q29_example:
            field = make_field(29)
        elif prop_id not in _OWN_FIELD:
            raise ValueError(f"{prop_id} needs a field")
    q = 0 if field is None else field.q
    started = time.perf_counter()
    try:
        outcome = _VERIFIERS[prop_id](
            field, params, _Context(strategy, jobs), dict(options)
        )
    except (InapplicableAtQ, NoWitnessInBudget) as e:
        if isinstance(e, NoWitnessInBudget) and e.budget is not None:
            raise
        reason = e.reason
        logger.info(f"{prop_id} is inapplicable at q = {q}: {reason}")
        return VerificationReport(
            prop_id, q, "", "", None, None, status=Status.inapplicable,
            reason=reason, seconds=time.perf_counter() - started,
        )

    agrees = outcome.expected == outcome.computed
    checks = {"image": agrees, **outcome.checks}
    status = Status.passed if all(checks.values()) else Status.failed
    report = VerificationReport(
        prop_id, outcome.q, outcome.word, outcome.params, outcome.expected,
        outcome.computed, checks, status,
        seconds=time.perf_counter() - started,
    )
    if not report.passed:
        logger.warning(report.text())
    return report


class PropositionCatalogue:
    """
    Titles and claims of the verifiable statements, and whether each one
    is swept over the q list.
    """
    def __init__(self, path: Path | str = PROPOSITIONS_PATH):
        """
        :param path: Path to the toml catalogue.
        :type path: Path | str
        """
        with open(path, mode="rb") as fp:
            specs = tomllib.load(fp)

        self.entries: dict[PropositionId, dict[str, Any]] = {
            proposition_id(key_): value for key_, value in specs.items()
        }

    def ids(self) -> list[PropositionId]:
        return list(self.entries)

    def title(self, prop_id: PropositionId) -> str:
        return str(self.entries[prop_id]["title"])

    def claim(self, prop_id: PropositionId) -> str:
        return str(self.entries[prop_id]["claim"])

    def swept(self, prop_id: PropositionId) -> bool:
        return bool(self.entries[prop_id].get("swept", True))


def _failed_report(
    prop_id: PropositionId, q: int, error: Exception
) -> VerificationReport:
    logger.error(f"{prop_id} at q = {q} failed: {error}")
    return VerificationReport(
        prop_id, q, "", "", None, None, status=Status.failed,
        reason=str(error),
    )


def run_suite(
    ids: Optional[Sequence[str | PropositionId]] = None,
    qs: Optional[Sequence[int]] = None,
    strategy: Strategy = Strategy.reduced,
    jobs: Optional[int] = None,
    catalogue: Optional[PropositionCatalogue] = None,
) -> list[VerificationReport]:
    """
    Verify every id over every q of `qs` (default: settings q list). Ids
    that are not swept run once: the q = 29 example at q = 29, the
    progression suite over its (t, part) cases. Reports keep submission
    order.
    """
    catalogue = PropositionCatalogue() if catalogue is None else catalogue
    ids_ = [proposition_id(i) for i in (ids or catalogue.ids())]
    qs = settings.current().q_list if qs is None else qs

    jobs_: list[tuple[PropositionId, Optional[int], dict[str, int]]] = []
    for prop_id in ids_:
        if prop_id == PropositionId.dirichlet_counts:
            jobs_ += [
                (prop_id, None, {"t": t, "part": part})
                for t, part in DIRICHLET_CASES
            ]
        elif not catalogue.swept(prop_id):
            jobs_.append((prop_id, None, {}))
        else:
            jobs_ += [(prop_id, q, {}) for q in qs]

    reports = []
    for prop_id, q, options in jobs_:
        field = None if q is None else field_from_order(q)
        try:
            reports.append(
                verify(prop_id, field, strategy=strategy, jobs=jobs,
                       **options)
            )
        except (NoWitnessInBudget, BudgetExceeded, HypothesisViolation) as e:
            reports.append(_failed_report(prop_id, q or 0, e))
    return reports


def family_params(family: Family, params: Params) -> Params:
    """
    `params` checked against the hypotheses of `family`.
    """
    if family == Family.wn and isinstance(params, WnParams):
        return params.validate()
    if isinstance(params, WmnParams):
        if family == Family.wmn:
            return params.without_zero_block().validate()
        if family == Family.w0mn:
            return params.validate()
    raise HypothesisViolation([f"parameters of the {family} family"])
