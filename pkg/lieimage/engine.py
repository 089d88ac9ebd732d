"""
Images of Lie words on sl2(F_q).

Three strategies: full enumeration of all assignments, the orbit
representative reduction for two variable words (the pivot variable runs
over `orbit_representatives`, the other over all of sl2(F_q)), and the
closed form determinant laws of the w_n family and its relatives.
"""
import csv
import io
import json
import multiprocessing
import multiprocessing.pool
import time
from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Optional

import galois
import numpy as np

from . import logger, settings
from .enums import Family, OrbitKind, Strategy
from .errors import ArityUnsupported, BudgetExceeded, ZeroArgument
from .gf import FieldDescriptor, make_field, parse_element, to_ints
from .lieword import (LieWord, Params, WmnParams, WnParams, arity,
                      build_family, evaluate, family_of, parse, render)
from .sl2 import (NILPOTENT, ZERO, OrbitLabel, Sl2Array, labels_of,
                  orbit_representatives, orbit_size)

IMAGE_POOL: Optional[multiprocessing.pool.Pool] = None
_IMAGE_POOL_SIZE = 0

_BRUTE = "brute"
_REDUCED = "reduced"


@dataclass(frozen=True, eq=False)
class ImageDescriptor:
    """
    The image w(L) as a set of orbit labels. Two descriptors are equal iff
    they describe the same field size and the same label set.
    """
    labels: frozenset[OrbitLabel]
    q: int
    word: str
    strategy: Strategy

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ImageDescriptor):
            return NotImplemented
        return self.q == other.q and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.q, self.labels))

    def sorted_labels(self) -> list[OrbitLabel]:
        return sorted(self.labels, key=OrbitLabel.sort_key)

    def kinds(self) -> Counter[OrbitKind]:
        """
        Number of orbits per kind.
        """
        return Counter(label.kind for label in self.labels)

    def semisimple_dets(self) -> set[int]:
        return {
            label.det.value for label in self.labels if label.det is not None
        }

    def element_count(self) -> int:
        """
        Number of elements of sl2(F_q) in the image.
        """
        return sum(orbit_size(label, self.q) for label in self.labels)

    def to_json(self) -> dict[str, Any]:
        return {
            "q": self.q,
            "word": self.word,
            "strategy": str(self.strategy),
            "labels": [label.to_json() for label in self.sorted_labels()],
        }

    @classmethod
    def from_json(
        cls, data: Mapping[str, Any], field: FieldDescriptor
    ) -> "ImageDescriptor":
        labels = frozenset(
            OrbitLabel(
                OrbitKind(entry["kind"]),
                None if entry["det"] is None
                else parse_element(field, entry["det"]),
            )
            for entry in data["labels"]
        )
        return cls(labels, int(data["q"]), data["word"],
                   Strategy(data["strategy"]))

    def text(self) -> str:
        labels = ", ".join(label.text() for label in self.sorted_labels())
        return f"{self.word} over F_{self.q} [{self.strategy}]: {{{labels}}}"


@dataclass(frozen=True)
class DetSpectrum:
    """
    Determinant values with multiplicities over an evaluated grid, keyed by
    element value.
    """
    field: FieldDescriptor
    counts: Mapping[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def values(self) -> frozenset[int]:
        return frozenset(self.counts)

    def nonzero_values(self) -> frozenset[int]:
        return frozenset(v for v in self.counts if v)

    def labels(self) -> set[OrbitLabel]:
        """
        Semisimple labels of the nonzero values.
        """
        return {
            OrbitLabel.semisimple(self.field.element(v))
            for v in self.nonzero_values()
        }

    def rows(self) -> list[tuple[str, int]]:
        """
        (det text, count) sorted by det text.
        """
        return sorted(
            (self.field.text(value), count)
            for value, count in self.counts.items()
        )


# Worker side

def _decode(
    field: FieldDescriptor, codes: np.ndarray
) -> Sl2Array:
    q = field.q
    return Sl2Array.from_ints(field, codes // (q * q), (codes // q) % q,
                              codes % q)


def _reduced_assignment(
    field: FieldDescriptor, pivot: int, start: int, stop: int
) -> dict[int, Sl2Array]:
    reps = Sl2Array.stack(field, orbit_representatives(field)[start:stop])
    reps = reps.reshape(stop - start, 1)
    others = _decode(
        field, np.arange(field.q**3, dtype=np.int64).reshape(1, -1)
    )
    return {pivot: reps, 3 - pivot: others}


def _brute_assignment(
    field: FieldDescriptor, k: int, start: int, stop: int
) -> dict[int, Sl2Array]:
    block = field.q**3
    flat = np.arange(start, stop, dtype=np.int64)
    return {
        v: _decode(field, (flat // block ** (v - 1)) % block)
        for v in range(1, k + 1)
    }


def _image_chunk_pkl(
    p: int,
    r: int,
    modulus: tuple[int, ...],
    word_text: str,
    mode: str,
    start: int,
    stop: int,
    pivot: int,
) -> tuple[set[OrbitLabel], dict[int, int]]:
    """
    Evaluate one chunk of the assignment grid. Takes primitives only so it
    can be shipped to pool workers.
    """
    field = make_field(p, r, modulus)
    word = parse(word_text)
    if mode == _REDUCED:
        assignment = _reduced_assignment(field, pivot, start, stop)
    else:
        assignment = _brute_assignment(field, arity(word), start, stop)

    shape = np.broadcast_shapes(*(x.shape for x in assignment.values()))
    result = evaluate(word, assignment)
    assert isinstance(result, Sl2Array)
    labels = labels_of(result, shape)
    dets = np.broadcast_to(
        to_ints(-(result.a * result.a) - result.b * result.c), shape
    )
    values, counts = np.unique(dets, return_counts=True)
    return labels, {int(v): int(c) for v, c in zip(values, counts)}


# Scheduling

def worker_pool(jobs: int) -> multiprocessing.pool.Pool:
    """
    The shared worker pool, recreated when `jobs` changes. Also used by
    the generation sweeps.
    """
    global IMAGE_POOL, _IMAGE_POOL_SIZE
    if IMAGE_POOL is None or _IMAGE_POOL_SIZE != jobs:
        shutdown_pool()
        IMAGE_POOL = multiprocessing.Pool(jobs)
        _IMAGE_POOL_SIZE = jobs
    return IMAGE_POOL


def shutdown_pool() -> None:
    global IMAGE_POOL, _IMAGE_POOL_SIZE
    if IMAGE_POOL is not None:
        IMAGE_POOL.terminate()
        IMAGE_POOL.join()
    IMAGE_POOL = None
    _IMAGE_POOL_SIZE = 0


def _run_chunks(
    field: FieldDescriptor,
    word: LieWord,
    mode: str,
    bounds: Iterable[tuple[int, int]],
    pivot: int,
    jobs: Optional[int],
) -> tuple[set[OrbitLabel], Counter[int]]:
    jobs = settings.current().jobs if jobs is None else jobs
    args = [
        (field.p, field.r, field.modulus, render(word), mode, start, stop,
         pivot)
        for start, stop in bounds
    ]
    if jobs > 1 and len(args) > 1:
        pool = worker_pool(jobs)
        pending = [pool.apply_async(_image_chunk_pkl, arg) for arg in args]
        results = [result.get() for result in pending]
    else:
        results = [_image_chunk_pkl(*arg) for arg in args]

    labels: set[OrbitLabel] = set()
    counts: Counter[int] = Counter()
    for chunk_labels, chunk_counts in results:
        labels |= chunk_labels
        counts.update(chunk_counts)
    return labels, counts


def _chunks(total: int, size: int) -> list[tuple[int, int]]:
    return [
        (start, min(start + size, total)) for start in range(0, total, size)
    ]


def _check_budget(required: int, budget: Optional[int]) -> int:
    budget = settings.current().budget if budget is None else budget
    if required > budget:
        raise BudgetExceeded(required, budget)
    return required


def _brute(
    w: LieWord, field: FieldDescriptor, budget: Optional[int],
    jobs: Optional[int],
) -> tuple[set[OrbitLabel], Counter[int]]:
    required = _check_budget(field.q ** (3 * arity(w)), budget)
    chunk_size = settings.current().chunk_size
    logger.info(
        f"Enumerating {required} assignments of {render(w)} over {field}"
    )
    return _run_chunks(field, w, _BRUTE, _chunks(required, chunk_size), 0,
                       jobs)


def _reduced(
    w: LieWord, field: FieldDescriptor, pivot: int, budget: Optional[int],
    jobs: Optional[int],
) -> tuple[set[OrbitLabel], Counter[int]]:
    if arity(w) != 2:
        raise ArityUnsupported(
            f"Representative reduction needs a two variable word, "
            f"{render(w)} has arity {arity(w)}"
        )
    if pivot not in (1, 2):
        raise ArityUnsupported(f"Pivot must be x1 or x2, got x{pivot}")
    reps = field.q + 1
    _check_budget(reps * field.q**3, budget)
    per_chunk = max(1, settings.current().chunk_size // field.q**3)
    logger.info(
        f"Evaluating {render(w)} over {field} with x{pivot} on {reps} "
        f"orbit representatives"
    )
    return _run_chunks(field, w, _REDUCED, _chunks(reps, per_chunk), pivot,
                       jobs)


def image_bruteforce(
    w: LieWord,
    field: FieldDescriptor,
    budget: Optional[int] = None,
    jobs: Optional[int] = None,
) -> ImageDescriptor:
    """
    The image of `w` by evaluation on every assignment.

    :param w: The word.
    :type w: LieWord
    :param field: The field F_q.
    :type field: FieldDescriptor
    :param budget: Maximum number of assignments, default from settings.
    :type budget: Optional[int]
    :param jobs: Worker processes, default from settings.
    :type jobs: Optional[int]
    :raises BudgetExceeded: q^(3 * arity) exceeds the budget.
    :return: The image.
    :rtype: ImageDescriptor
    """
    labels, _ = _brute(w, field, budget, jobs)
    return ImageDescriptor(
        frozenset(labels), field.q, render(w), Strategy.brute
    )


def image_reduced(
    w: LieWord,
    field: FieldDescriptor,
    pivot: int = 1,
    jobs: Optional[int] = None,
    budget: Optional[int] = None,
) -> ImageDescriptor:
    """
    The image of a two variable word with the `pivot` variable restricted
    to orbit representatives. Every automorphism orbit of assignments meets
    that slice, so the label set is the full image.

    :raises ArityUnsupported: `w` does not have arity 2.
    :raises BudgetExceeded: (q + 1) * q^3 exceeds the budget.
    """
    labels, _ = _reduced(w, field, pivot, budget, jobs)
    return ImageDescriptor(
        frozenset(labels), field.q, render(w), Strategy.reduced
    )


def det_spectrum(
    w: LieWord,
    field: FieldDescriptor,
    strategy: Strategy = Strategy.reduced,
    pivot: int = 1,
    budget: Optional[int] = None,
    jobs: Optional[int] = None,
) -> DetSpectrum:
    """
    Determinant values of `w` with multiplicities over the grid evaluated
    by `strategy`. Multiplicities depend on the grid, the value set does
    not.

    :raises ValueError: `strategy` is closed; use `closed_form_spectrum`.
    :raises BudgetExceeded: The evaluated grid is over budget.
    """
    match strategy:
        case Strategy.brute:
            _, counts = _brute(w, field, budget, jobs)
        case Strategy.reduced:
            _, counts = _reduced(w, field, pivot, budget, jobs)
        case _:
            raise ValueError(
                "Closed form spectra need family parameters"
            )
    return DetSpectrum(field, dict(counts))


# Closed forms

def _field_pow(
    field: FieldDescriptor, base: galois.FieldArray, exponent: int
) -> galois.FieldArray:
    if exponent == 0:
        return field.gf.Ones(base.shape)
    return base**exponent


def _two_power(field: FieldDescriptor, exponent: int) -> galois.FieldArray:
    return field.constant(pow(2, exponent, field.p))


def _difference_factor(
    field: FieldDescriptor, a: galois.FieldArray, c: int
) -> galois.FieldArray:
    # (2^c a^(c/2) - 1)^2 for an even difference c = alpha - beta
    factor = _two_power(field, c) * _field_pow(field, a, c // 2)
    factor = factor - field.constant(1)
    return factor * factor


def _wn_law(
    p: WnParams, field: FieldDescriptor,
    a: galois.FieldArray, b: galois.FieldArray,
) -> galois.FieldArray:
    n, sigma = p.n, p.sigma
    sign = (-1) ** n if p.j % 2 == 0 else (-1) ** (n + 1)
    return (
        field.constant(sign)
        * _two_power(field, 2 * (p.j - 1 + sigma))
        * _field_pow(field, a, p.j - 2 * n - 1 + sigma)
        * _difference_factor(field, a, p.i - p.j)
        * _field_pow(field, b, 2 * n + 1)
    )


def _wmn_law(
    p: WmnParams, field: FieldDescriptor,
    a: galois.FieldArray, b: galois.FieldArray,
) -> galois.FieldArray:
    n, m, total = p.n, p.m, p.exponent_total
    sign = (-1) ** (m + 1) if p.beta_pattern == 1 else -1
    value = (
        field.constant(sign)
        * _two_power(field, 2 * (total - 1))
        * _field_pow(field, a, total - 2 * n - m)
        * _field_pow(field, b, 2 * n + m)
    )
    for alpha, beta in zip(p.alphas, p.betas):
        value = value * _difference_factor(field, a, alpha - beta)
    return value


def _w0mn_law(
    p: WmnParams, field: FieldDescriptor,
    a: galois.FieldArray, b: galois.FieldArray,
) -> galois.FieldArray:
    assert p.zero_block is not None
    n, m, total = p.n, p.m, p.exponent_total
    value = (
        field.constant(-1)
        * _two_power(field, 2 * (total - 1))
        * _field_pow(field, a, total - 2 * n - m - 3)
        * _field_pow(field, b, 2 * n + m + 3)
        * _difference_factor(
            field, a, p.zero_block.alpha0 - p.zero_block.beta0
        )
    )
    for alpha, beta in zip(p.alphas, p.betas):
        value = value * _difference_factor(field, a, alpha - beta)
    return value


def closed_form_values(
    family: Family,
    params: Params,
    field: FieldDescriptor,
    a: galois.FieldArray,
    b: galois.FieldArray,
) -> galois.FieldArray:
    """
    The determinant law of `family` at (a, b): the determinant of the word
    at A = e + a f and an X whose quadratic form value is b.

    :raises HypothesisViolation: `params` fail the family hypotheses.
    """
    match family:
        case Family.wn:
            assert isinstance(params, WnParams)
            return _wn_law(params.validate(), field, a, b)
        case Family.wmn:
            assert isinstance(params, WmnParams)
            params = params.without_zero_block().validate()
            if params.m == 1:
                return _wn_law(params.inner, field, a, b)
            return _wmn_law(params, field, a, b)
        case Family.w0mn:
            assert isinstance(params, WmnParams)
            return _w0mn_law(params.validate(), field, a, b)
    raise ValueError(f"{family} has no closed form determinant law")


def closed_form_spectrum(
    family: Family, params: Params, field: FieldDescriptor
) -> DetSpectrum:
    """
    Determinant values of the closed form law over all (a, b) in F_q^2.
    Counts are over that grid and say nothing about the word's own
    multiplicities.
    """
    elements = field.elements_array()
    values = closed_form_values(
        family, params, field, elements.reshape(-1, 1),
        elements.reshape(1, -1),
    )
    unique, counts = np.unique(to_ints(values), return_counts=True)
    return DetSpectrum(
        field, {int(v): int(c) for v, c in zip(unique, counts)}
    )


def closed_form_image(
    params: Params, field: FieldDescriptor
) -> ImageDescriptor:
    """
    The image predicted by the determinant law: 0, the semisimple orbits
    of the nonzero values, and the nilpotent orbit only for the degenerate
    w_n shape.
    """
    family = family_of(params)
    spectrum = closed_form_spectrum(family, params, field)
    labels = {ZERO} | spectrum.labels()
    if isinstance(params, WnParams) and params.admits_nilpotents:
        labels.add(NILPOTENT)
    return ImageDescriptor(
        frozenset(labels), field.q, render(build_family(family, params)),
        Strategy.closed,
    )


def compute_image(
    w: Optional[LieWord],
    field: FieldDescriptor,
    strategy: Strategy = Strategy.reduced,
    params: Optional[Params] = None,
    pivot: int = 1,
    budget: Optional[int] = None,
    jobs: Optional[int] = None,
) -> ImageDescriptor:
    """
    Compute an image with the given strategy. Reduced evaluation of words
    with arity other than 2 falls back to brute force.

    :param w: The word. Built from `params` when omitted.
    :type w: Optional[LieWord]
    :param params: Family parameters, required for the closed strategy.
    :type params: Optional[WnParams | WmnParams]
    """
    started = time.perf_counter()
    if strategy == Strategy.closed:
        if params is None:
            raise ValueError("The closed strategy needs family parameters")
        image = closed_form_image(params, field)
    else:
        if w is None:
            if params is None:
                raise ValueError("Give a word or family parameters")
            w = build_family(family_of(params), params)
        if strategy == Strategy.reduced and arity(w) != 2:
            logger.warning(
                f"{render(w)} has arity {arity(w)}, falling back to brute "
                "force"
            )
            strategy = Strategy.brute
        if strategy == Strategy.reduced:
            image = image_reduced(w, field, pivot, jobs, budget)
        else:
            image = image_bruteforce(w, field, budget, jobs)
    logger.info(
        f"Image over {field} ({image.strategy}) has {len(image.labels)} "
        f"orbits, took {time.perf_counter() - started:.3f}s"
    )
    return image


def scale_labels(
    labels: Iterable[OrbitLabel], c: int, field: FieldDescriptor
) -> set[OrbitLabel]:
    """
    Labels of the image of c*w given the labels of w: semisimple
    determinants are multiplied by c^2.

    :raises ZeroArgument: `c` is 0 in F_q.
    """
    factor = field.scalar(c)
    if factor.is_zero():
        raise ZeroArgument(f"Scale {c} vanishes in {field}")
    square = factor * factor
    return {
        label if label.det is None
        else OrbitLabel.semisimple(square * label.det)
        for label in labels
    }


def image_to_json(image: ImageDescriptor) -> str:
    return json.dumps(image.to_json(), indent=2)


def spectrum_to_csv(spectrum: DetSpectrum) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("det", "count"))
    writer.writerows(spectrum.rows())
    return buffer.getvalue()
