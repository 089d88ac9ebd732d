"""
Generation of sl2(F_q): subalgebra closure, pairwise generation, the
one-and-a-half generation sweep and automorphism orbits of generating
tuples. Automorphisms are conjugations by PGL_2(q).
"""
import functools
import itertools
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np

from . import logger, settings
from .engine import worker_pool
from .errors import BudgetExceeded, FieldMismatch
from .gf import FieldDescriptor, make_field, to_ints
from .sl2 import (Gl2Element, Sl2, Sl2Array, Sl2Element, all_sl2, as_array,
                  bracket, conjugate)


@dataclass(frozen=True)
class GenerationReport:
    """
    Orbit count of generating k-tuples under Aut(sl2(F_q)). `free` holds
    when no automorphism other than the identity fixes a generating tuple,
    which makes `orbit_count * aut_order == generating_tuples`.
    """
    q: int
    k: int
    total_tuples: int
    generating_tuples: int
    aut_order: int
    orbit_count: int
    free: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "q": self.q,
            "k": self.k,
            "total_tuples": self.total_tuples,
            "generating_tuples": self.generating_tuples,
            "aut_order": self.aut_order,
            "orbit_count": self.orbit_count,
            "free": self.free,
        }

    def text(self) -> str:
        return (
            f"F_{self.q}, k = {self.k}: {self.generating_tuples} of "
            f"{self.total_tuples} tuples generate, |Aut| = {self.aut_order}, "
            f"r = {self.orbit_count}, "
            f"action {'free' if self.free else 'NOT free'}"
        )


def _coordinates(field: FieldDescriptor, xs: Sequence[Sl2Element]) -> Any:
    return field.gf(
        np.array(
            [[x.a.value, x.b.value, x.c.value] for x in xs], dtype=np.int64
        )
    )


def _span_basis(
    field: FieldDescriptor, xs: Sequence[Sl2Element]
) -> list[Sl2Element]:
    reduced = to_ints(_coordinates(field, xs).row_reduce())
    return [
        Sl2Element.from_values(field, *map(int, row))
        for row in reduced if row.any()
    ]


def subalgebra_closure(generators: Sequence[Sl2Element]) -> int:
    """
    Dimension of the subalgebra generated by `generators`: the span is
    extended by brackets of its basis until the rank stops growing.

    :raises ValueError: No generators.
    :raises FieldMismatch: Generators from different fields.
    """
    if not generators:
        raise ValueError("Need at least one generator")
    field = generators[0].field
    if any(x.field != field for x in generators):
        raise FieldMismatch("Generators must share one field")

    basis = _span_basis(field, generators)
    while True:
        products = [
            bracket(x, y) for x, y in itertools.combinations(basis, 2)
        ]
        extended = _span_basis(field, basis + products) if basis else basis
        if len(extended) == len(basis):
            return len(basis)
        basis = extended


def generates_pairwise(xs: Sl2, ys: Sl2) -> np.ndarray:
    """
    Broadcast test of whether x and y generate sl2(F_q), i.e.
    det[x; y; [x, y]] != 0.
    """
    x, y = as_array(xs), as_array(ys)
    z = as_array(bracket(x, y))
    d = (
        x.a * (y.b * z.c - y.c * z.b)
        - x.b * (y.a * z.c - y.c * z.a)
        + x.c * (y.a * z.b - y.b * z.a)
    )
    return to_ints(d) != 0


def _witness_chunk_pkl(
    p: int, r: int, modulus: tuple[int, ...], start: int, stop: int
) -> list[int]:
    """
    For each x with code in [start, stop), the smallest code of a y such
    that x and y generate, or -1.
    """
    field = make_field(p, r, modulus)
    everything = all_sl2(field)
    xs = everything.reshape(-1)
    a, b, c = xs.int_coords()
    chunk = Sl2Array.from_ints(
        field, a[start:stop], b[start:stop], c[start:stop]
    ).reshape(stop - start, 1)
    mask = generates_pairwise(chunk, everything.reshape(1, -1))
    found = mask.any(axis=1)
    return np.where(found, mask.argmax(axis=1), -1).tolist()


def is_one_and_a_half_generated(
    field: FieldDescriptor, jobs: Optional[int] = None
) -> tuple[bool, dict[Sl2Element, Sl2Element]]:
    """
    Whether every nonzero x has a partner y with <x, y> = sl2(F_q).

    :raises BudgetExceeded: q is above the configured generation limit.
    :return: The verdict and the smallest partner of each nonzero x that
    has one.
    :rtype: tuple[bool, dict[Sl2Element, Sl2Element]]
    """
    current = settings.current()
    q = field.q
    if q > current.genset_qmax:
        raise BudgetExceeded(q**6, current.genset_qmax**6)
    jobs = current.jobs if jobs is None else jobs

    per_chunk = max(1, current.chunk_size // q**3)
    args = [
        (field.p, field.r, field.modulus, start, min(start + per_chunk, q**3))
        for start in range(1, q**3, per_chunk)
    ]
    logger.info(f"Generation sweep over {field} in {len(args)} chunks")
    if jobs > 1 and len(args) > 1:
        pool = worker_pool(jobs)
        pending = [pool.apply_async(_witness_chunk_pkl, arg) for arg in args]
        found = [code for result in pending for code in result.get()]
    else:
        found = [code for arg in args for code in _witness_chunk_pkl(*arg)]

    everything = all_sl2(field)
    witnesses = {
        everything.item((x,)): everything.item((y,))
        for x, y in enumerate(found, start=1) if y >= 0
    }
    return len(witnesses) == q**3 - 1, witnesses


def generation_number(field: FieldDescriptor) -> int:
    """
    k(sl2(F_q)): 2 when the algebra is one-and-a-half generated, else 3.
    """
    ok, _ = is_one_and_a_half_generated(field)
    return 2 if ok else 3


@functools.lru_cache(maxsize=None)
def _aut_entries(field: FieldDescriptor) -> tuple[tuple[int, ...], ...]:
    q = field.q
    grid = np.array(list(itertools.product(range(q), repeat=4)),
                    dtype=np.int64)
    g00, g01, g10, g11 = (field.array(grid[:, i]) for i in range(4))
    invertible = to_ints(g00 * g11 - g01 * g10) != 0
    # First nonzero entry normalised to 1
    first = np.where(grid[:, 0] != 0, grid[:, 0], grid[:, 1])
    return tuple(
        tuple(map(int, row)) for row in grid[invertible & (first == 1)]
    )


def aut_elements(field: FieldDescriptor) -> list[Gl2Element]:
    """
    One matrix per class of PGL_2(q), the one whose first nonzero entry is
    1, in lexicographic order. There are q(q^2 - 1) of them.
    """
    return [
        Gl2Element(*(field.element(v) for v in entries))
        for entries in _aut_entries(field)
    ]


def _conjugation_table(field: FieldDescriptor) -> np.ndarray:
    # Row g, column code(x): code(g x g^-1)
    everything = all_sl2(field)
    return np.stack([
        as_array(conjugate(g, everything)).encode()
        for g in aut_elements(field)
    ])


def orbits_of(field: FieldDescriptor) -> list[frozenset[int]]:
    """
    All Aut-orbits on sl2(F_q) as sets of element codes
    (`Sl2Array.encode`), ordered by smallest code.
    """
    table = _conjugation_table(field)
    seen = np.zeros(table.shape[1], dtype=bool)
    orbits = []
    for code in range(table.shape[1]):
        if seen[code]:
            continue
        orbit = frozenset(int(c) for c in np.unique(table[:, code]))
        seen[list(orbit)] = True
        orbits.append(orbit)
    logger.debug(f"{len(orbits)} orbits on sl2 over {field}")
    return orbits


def find_automorphism(
    xs: Sequence[Sl2Element], ys: Sequence[Sl2Element]
) -> Optional[Gl2Element]:
    """
    The first g in `aut_elements` with g x_i g^-1 = y_i for all i.
    """
    if len(xs) != len(ys):
        raise ValueError("Tuples of different lengths")
    if not xs:
        raise ValueError("Need nonempty tuples")
    field = xs[0].field
    for g in aut_elements(field):
        if all(conjugate(g, x) == y for x, y in zip(xs, ys)):
            return g
    return None


def same_orbit(xs: Sequence[Sl2Element], ys: Sequence[Sl2Element]) -> bool:
    return find_automorphism(xs, ys) is not None


def _generating_mask(field: FieldDescriptor, k: int) -> np.ndarray:
    everything = all_sl2(field)
    size = field.q**3
    if k == 1:
        return np.zeros(size, dtype=bool)
    if k == 2:
        return generates_pairwise(
            everything.reshape(size, 1), everything.reshape(1, size)
        )
    mask = np.zeros((size,) * k, dtype=bool)
    for index in np.ndindex(mask.shape):
        mask[index] = subalgebra_closure(
            [everything.item((i,)) for i in index]
        ) == 3
    return mask


def tuple_orbit_census(
    field: FieldDescriptor, k: int = 2, budget: Optional[int] = None
) -> GenerationReport:
    """
    Count generating k-tuples, their Aut-orbits and check that the action
    on them is free.

    :raises BudgetExceeded: q^(3k) * |Aut| exceeds the budget.
    """
    if k < 1:
        raise ValueError(f"Tuple length must be positive, got {k}")
    budget = settings.current().budget if budget is None else budget
    table = _conjugation_table(field)
    aut_order = table.shape[0]
    total = field.q ** (3 * k)
    if total * aut_order > budget:
        raise BudgetExceeded(total * aut_order, budget)

    mask = _generating_mask(field, k)
    generating = int(np.count_nonzero(mask))
    codes = np.arange(table.shape[1])
    identity = Gl2Element.identity(field)
    fixed_tuples = 0
    for g, row in zip(aut_elements(field), table):
        if g == identity:
            continue
        fixed = row == codes
        fixed_k = functools.reduce(np.multiply.outer, [fixed] * k)
        fixed_tuples += int(np.count_nonzero(mask & fixed_k))

    free = fixed_tuples == 0 and generating % aut_order == 0
    if not free:
        logger.warning(
            f"Aut acts with fixed points on generating {k}-tuples over "
            f"{field}"
        )
    return GenerationReport(
        field.q, k, total, generating, aut_order,
        generating // aut_order, free,
    )
