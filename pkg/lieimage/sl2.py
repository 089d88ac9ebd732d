"""
The Lie algebra sl2(F_q).

An element a*h + b*e + c*f is the trace zero matrix [[a, b], [c, -a]].
`Sl2Element` is a single element with `FieldElement` coordinates,
`Sl2Array` holds whole grids of elements as galois arrays and carries all
the arithmetic. Every public function accepts either.
"""
import functools
import re
from dataclasses import dataclass
from typing import Optional, Sequence, TypeVar, overload

import galois
import numpy as np

from .enums import OrbitKind
from .errors import FieldMismatch, InvalidExponent, SingularMatrix
from .gf import (FieldDescriptor, FieldElement, all_elements, characters,
                 parse_element, to_ints)

_COORDINATE = re.compile(r"\([^()]*\)|[^,()\s]+")


@dataclass(frozen=True)
class Sl2Element:
    a: FieldElement
    b: FieldElement
    c: FieldElement

    def __post_init__(self) -> None:
        if not self.a.field == self.b.field == self.c.field:
            raise FieldMismatch("Coordinates of one element share a field")

    @property
    def field(self) -> FieldDescriptor:
        return self.a.field

    @classmethod
    def zero(cls, field: FieldDescriptor) -> "Sl2Element":
        return cls(field.zero, field.zero, field.zero)

    @classmethod
    def from_values(
        cls, field: FieldDescriptor, a: int, b: int, c: int
    ) -> "Sl2Element":
        """
        Build from integer element values (not reduced).
        """
        return cls(field.element(a), field.element(b), field.element(c))

    @classmethod
    def from_scalars(
        cls, field: FieldDescriptor, a: int, b: int, c: int
    ) -> "Sl2Element":
        """
        Build from integers read in the prime subfield, e.g. -1.
        """
        return cls(field.scalar(a), field.scalar(b), field.scalar(c))

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero() and self.c.is_zero()

    def to_array(self) -> "Sl2Array":
        gf = self.field.gf
        return Sl2Array(
            self.field, gf(self.a.value), gf(self.b.value), gf(self.c.value)
        )

    def __add__(self, other: "Sl2Element") -> "Sl2Element":
        return Sl2Element(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: "Sl2Element") -> "Sl2Element":
        return Sl2Element(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self) -> "Sl2Element":
        return Sl2Element(-self.a, -self.b, -self.c)

    def __rmul__(self, factor: FieldElement | int) -> "Sl2Element":
        return Sl2Element(factor * self.a, factor * self.b, factor * self.c)

    def text(self) -> str:
        return f"{self.a.text()},{self.b.text()},{self.c.text()}"

    def __str__(self) -> str:
        return self.text()


class Sl2Array:
    """
    A broadcastable array of sl2 elements: three galois arrays of
    compatible shapes holding the h, e and f coordinates.
    """
    __slots__ = ("field", "a", "b", "c")

    def __init__(
        self,
        field: FieldDescriptor,
        a: galois.FieldArray,
        b: galois.FieldArray,
        c: galois.FieldArray,
    ):
        self.field = field
        self.a = a
        self.b = b
        self.c = c

    @classmethod
    def from_ints(
        cls,
        field: FieldDescriptor,
        a: np.ndarray,
        b: np.ndarray,
        c: np.ndarray,
    ) -> "Sl2Array":
        return cls(field, field.array(a), field.array(b), field.array(c))

    @classmethod
    def stack(
        cls, field: FieldDescriptor, elements: Sequence[Sl2Element]
    ) -> "Sl2Array":
        return cls.from_ints(
            field,
            np.array([x.a.value for x in elements], dtype=np.int64),
            np.array([x.b.value for x in elements], dtype=np.int64),
            np.array([x.c.value for x in elements], dtype=np.int64),
        )

    @property
    def shape(self) -> tuple[int, ...]:
        return np.broadcast_shapes(self.a.shape, self.b.shape, self.c.shape)

    def int_coords(
        self, shape: Optional[tuple[int, ...]] = None
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Coordinates as integer arrays broadcast to `shape` (default: the
        common shape).
        """
        shape = self.shape if shape is None else shape
        return (
            np.broadcast_to(to_ints(self.a), shape),
            np.broadcast_to(to_ints(self.b), shape),
            np.broadcast_to(to_ints(self.c), shape),
        )

    def item(self, index: tuple[int, ...] = ()) -> Sl2Element:
        a, b, c = self.int_coords()
        return Sl2Element.from_values(
            self.field, int(a[index]), int(b[index]), int(c[index])
        )

    def reshape(self, *shape: int) -> "Sl2Array":
        a, b, c = self.int_coords()
        return Sl2Array.from_ints(
            self.field, a.reshape(shape), b.reshape(shape), c.reshape(shape)
        )

    def scale(self, factor: galois.FieldArray) -> "Sl2Array":
        return Sl2Array(
            self.field, factor * self.a, factor * self.b, factor * self.c
        )

    def __add__(self, other: "Sl2Array") -> "Sl2Array":
        _check_fields(self, other)
        return Sl2Array(
            self.field, self.a + other.a, self.b + other.b, self.c + other.c
        )

    def __sub__(self, other: "Sl2Array") -> "Sl2Array":
        _check_fields(self, other)
        return Sl2Array(
            self.field, self.a - other.a, self.b - other.b, self.c - other.c
        )

    def __neg__(self) -> "Sl2Array":
        return Sl2Array(self.field, -self.a, -self.b, -self.c)

    def encode(self) -> np.ndarray:
        """
        One integer per element, a*q^2 + b*q + c.
        """
        q = self.field.q
        a, b, c = self.int_coords()
        return (a * q + b) * q + c


Sl2 = TypeVar("Sl2", Sl2Element, Sl2Array)


def _check_fields(x: Sl2Element | Sl2Array, y: Sl2Element | Sl2Array) -> None:
    if x.field != y.field:
        raise FieldMismatch(
            f"Cannot combine elements of {x.field} and {y.field}"
        )


def as_array(x: Sl2Element | Sl2Array) -> Sl2Array:
    return x.to_array() if isinstance(x, Sl2Element) else x


def _restore(
    result: Sl2Array, *inputs: Sl2Element | Sl2Array
) -> Sl2Element | Sl2Array:
    if all(isinstance(x, Sl2Element) for x in inputs):
        return result.item()
    return result


def _bracket(x: Sl2Array, y: Sl2Array) -> Sl2Array:
    two = x.field.constant(2)
    return Sl2Array(
        x.field,
        x.b * y.c - x.c * y.b,
        two * (x.a * y.b - x.b * y.a),
        two * (x.c * y.a - x.a * y.c),
    )


def _product(x: Sl2Array, y: Sl2Array) -> Sl2Array:
    # Matrix product XY, valid as an sl2 element only when tr(XY) = 0
    return Sl2Array(
        x.field,
        x.a * y.a + x.b * y.c,
        x.a * y.b - x.b * y.a,
        x.c * y.a - x.a * y.c,
    )


def _det(x: Sl2Array) -> galois.FieldArray:
    return -(x.a * x.a) - x.b * x.c


@overload
def bracket(x: Sl2Element, y: Sl2Element) -> Sl2Element: ...
@overload  # noqa: E302
def bracket(x: Sl2Array | Sl2Element, y: Sl2Array) -> Sl2Array: ...
@overload  # noqa: E302
def bracket(x: Sl2Array, y: Sl2Element) -> Sl2Array: ...
def bracket(x, y):  # type: ignore[no-untyped-def]  # noqa: E302
    """
    The Lie bracket XY - YX.
    """
    _check_fields(x, y)
    return _restore(_bracket(as_array(x), as_array(y)), x, y)


def det(x: Sl2Element | Sl2Array) -> FieldElement | galois.FieldArray:
    """
    Determinant -a^2 - bc. A `FieldElement` for single elements.
    """
    value = _det(as_array(x))
    if isinstance(x, Sl2Element):
        return FieldElement(x.field, int(value))
    return value


def _power(
    field: FieldDescriptor, base: galois.FieldArray, exponent: int
) -> galois.FieldArray:
    if exponent == 0:
        return field.gf.Ones(base.shape)
    return base**exponent


def _matrix_pow_repr(
    x: Sl2Array, n: int
) -> tuple[galois.FieldArray, bool]:
    minus_det = -_det(x)
    if n % 2 == 0:
        return _power(x.field, minus_det, n // 2), False
    return _power(x.field, minus_det, (n - 1) // 2), True


def matrix_pow_repr(
    x: Sl2Element | Sl2Array, n: int
) -> tuple[FieldElement | galois.FieldArray, bool]:
    """
    Write X^n as `scalar * I` or `scalar * X`, using X^2 = -det(X) I.

    :param x: The matrix X.
    :type x: Sl2Element | Sl2Array
    :param n: The exponent, at least 0.
    :type n: int
    :raises InvalidExponent: `n` is negative.
    :return: The scalar and whether it multiplies X (True) or I (False).
    :rtype: tuple[FieldElement | galois.FieldArray, bool]
    """
    if n < 0:
        raise InvalidExponent(f"Matrix power must be nonnegative, got {n}")
    scalar, uses_x = _matrix_pow_repr(as_array(x), n)
    if isinstance(x, Sl2Element):
        return FieldElement(x.field, int(scalar)), uses_x
    return scalar, uses_x


def _ad_pow(base: Sl2Array, n: int, x: Sl2Array) -> Sl2Array:
    adjoint = _bracket(base, x)
    if n == 1:
        return adjoint
    scalar, uses_base = _matrix_pow_repr(base, n - 1)
    factor = scalar * base.field.constant(pow(2, n - 1, base.field.p))
    if uses_base:
        # tr(A [A, X]) = 0, so A [A, X] stays in sl2
        return _product(base, adjoint).scale(factor)
    return adjoint.scale(factor)


@overload
def ad_pow(base: Sl2Element, n: int, x: Sl2Element) -> Sl2Element: ...
@overload  # noqa: E302
def ad_pow(base: Sl2Array | Sl2Element, n: int, x: Sl2Array) -> Sl2Array: ...
@overload  # noqa: E302
def ad_pow(base: Sl2Array, n: int, x: Sl2Element) -> Sl2Array: ...
def ad_pow(base, n, x):  # type: ignore[no-untyped-def]  # noqa: E302
    """
    ad_A^n(X) in closed form, 2^(n-1) A^(n-1) ad_A(X), with the matrix power
    folded by `matrix_pow_repr`.

    :raises InvalidExponent: `n` < 1.
    """
    if n < 1:
        raise InvalidExponent(f"ad exponent must be at least 1, got {n}")
    _check_fields(base, x)
    return _restore(_ad_pow(as_array(base), n, as_array(x)), base, x)


def ad_pow_iterated(base: Sl2, n: int, x: Sl2) -> Sl2:
    """
    ad_A^n(X) as n nested brackets. Test oracle for `ad_pow`.
    """
    if n < 1:
        raise InvalidExponent(f"ad exponent must be at least 1, got {n}")
    result = x
    for _ in range(n):
        result = bracket(base, result)
    return result


@dataclass(frozen=True)
class OrbitLabel:
    """
    Canonical name of one automorphism orbit. `det` is set exactly for the
    semisimple kinds.
    """
    kind: OrbitKind
    det: Optional[FieldElement] = None

    def __post_init__(self) -> None:
        if self.kind.is_semisimple and self.det is None:
            raise ValueError(f"{self.kind} labels need a determinant")
        if not self.kind.is_semisimple and self.det is not None:
            raise ValueError(f"{self.kind} labels take no determinant")

    @classmethod
    def semisimple(cls, det: FieldElement) -> "OrbitLabel":
        """
        Label of the semisimple orbit with nonzero determinant `det`.
        """
        minus_det = (-det).value
        if minus_det == 0:
            raise ValueError("Semisimple orbits have nonzero determinant")
        square = characters(det.field, np.array([minus_det]))[0] == 1
        return cls(
            OrbitKind.split if square else OrbitKind.anisotropic, det
        )

    def sort_key(self) -> tuple[int, int]:
        return self.kind.rank, -1 if self.det is None else self.det.value

    def text(self) -> str:
        if self.det is None:
            return str(self.kind)
        return f"{self.kind}({self.det.text()})"

    def to_json(self) -> dict[str, Optional[str]]:
        return {
            "kind": str(self.kind),
            "det": None if self.det is None else self.det.text(),
        }

    def __str__(self) -> str:
        return self.text()


ZERO = OrbitLabel(OrbitKind.zero)
NILPOTENT = OrbitLabel(OrbitKind.nilpotent)


def classify(x: Sl2Element) -> OrbitLabel:
    if x.is_zero():
        return ZERO
    d = det(x)
    assert isinstance(d, FieldElement)
    if d.is_zero():
        return NILPOTENT
    return OrbitLabel.semisimple(d)


def labels_from_dets(
    field: FieldDescriptor, dets: np.ndarray
) -> set[OrbitLabel]:
    """
    Semisimple labels for the nonzero values among integer `dets`.
    """
    values = np.unique(np.asarray(dets, dtype=np.int64))
    return {
        OrbitLabel.semisimple(field.element(int(v))) for v in values if v
    }


def labels_of(
    x: Sl2Array, shape: Optional[tuple[int, ...]] = None
) -> set[OrbitLabel]:
    """
    All orbit labels met by an array of elements.
    """
    a, b, c = x.int_coords(shape)
    dets = np.broadcast_to(to_ints(_det(x)), a.shape)
    is_zero = (a == 0) & (b == 0) & (c == 0)
    labels = labels_from_dets(x.field, dets[dets != 0])
    if is_zero.any():
        labels.add(ZERO)
    if ((dets == 0) & ~is_zero).any():
        labels.add(NILPOTENT)
    return labels


def all_labels(field: FieldDescriptor) -> set[OrbitLabel]:
    """
    The q + 1 labels of sl2(F_q).
    """
    return {ZERO, NILPOTENT} | labels_from_dets(
        field, np.arange(1, field.q, dtype=np.int64)
    )


def basis(field: FieldDescriptor) -> tuple[Sl2Element, Sl2Element, Sl2Element]:
    """
    The standard basis h, e, f.
    """
    return (
        Sl2Element.from_values(field, 1, 0, 0),
        Sl2Element.from_values(field, 0, 1, 0),
        Sl2Element.from_values(field, 0, 0, 1),
    )


def orbit_representatives(field: FieldDescriptor) -> list[Sl2Element]:
    """
    0 followed by e + a f for a in F_q, in element order.
    """
    zero = Sl2Element.zero(field)
    return [zero] + [
        Sl2Element(field.zero, field.one, a) for a in all_elements(field)
    ]


@functools.lru_cache(maxsize=None)
def _all_elements_ints(q: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    grid = np.arange(q**3, dtype=np.int64)
    return grid // (q * q), (grid // q) % q, grid % q


def all_sl2(field: FieldDescriptor) -> Sl2Array:
    """
    Every element of sl2(F_q), ordered by `Sl2Array.encode`.
    """
    a, b, c = _all_elements_ints(field.q)
    return Sl2Array.from_ints(field, a, b, c)


@dataclass(frozen=True)
class Gl2Element:
    """
    An invertible matrix [[g00, g01], [g10, g11]].
    """
    g00: FieldElement
    g01: FieldElement
    g10: FieldElement
    g11: FieldElement

    @property
    def field(self) -> FieldDescriptor:
        return self.g00.field

    @property
    def det(self) -> FieldElement:
        return self.g00 * self.g11 - self.g01 * self.g10

    @classmethod
    def identity(cls, field: FieldDescriptor) -> "Gl2Element":
        return cls(field.one, field.zero, field.zero, field.one)

    @classmethod
    def from_scalars(
        cls, field: FieldDescriptor, g00: int, g01: int, g10: int, g11: int
    ) -> "Gl2Element":
        return cls(
            field.scalar(g00), field.scalar(g01),
            field.scalar(g10), field.scalar(g11),
        )

    def entries(self) -> tuple[int, int, int, int]:
        return (
            self.g00.value, self.g01.value, self.g10.value, self.g11.value
        )


def conjugate(g: Gl2Element, x: Sl2) -> Sl2:
    """
    g X g^-1.

    :raises SingularMatrix: det(g) = 0.
    """
    if g.field != x.field:
        raise FieldMismatch(
            f"Cannot combine elements of {g.field} and {x.field}"
        )
    d = g.det
    if d.is_zero():
        raise SingularMatrix("Cannot conjugate by a singular matrix")
    gf = g.field.gf
    s, t, u, v = (gf(value) for value in g.entries())
    inverse_det = gf(d.inverse().value)
    y = as_array(x)
    # Rows of gX
    m00, m01 = s * y.a + t * y.c, s * y.b - t * y.a
    m10, m11 = u * y.a + v * y.c, u * y.b - v * y.a
    result = Sl2Array(
        g.field,
        (m00 * v - m01 * u) * inverse_det,
        (m01 * s - m00 * t) * inverse_det,
        (m10 * v - m11 * u) * inverse_det,
    )
    if isinstance(x, Sl2Element):
        return result.item()  # type: ignore[return-value]
    return result  # type: ignore[return-value]


def parse_sl2(field: FieldDescriptor, text: str) -> Sl2Element:
    """
    Read the textual form "a,b,c". Coordinates are written as by
    `FieldElement.text`, e.g. "(1,2),0,-1" over F_9.
    """
    parts = _COORDINATE.findall(text)
    if len(parts) != 3 or ",".join(parts) != text.replace(" ", ""):
        raise ValueError(f"Expected three coordinates 'a,b,c', got {text!r}")
    a, b, c = (parse_element(field, part) for part in parts)
    return Sl2Element(a, b, c)


def orbit_size(label: OrbitLabel, q: int) -> int:
    """
    Number of elements of sl2(F_q) carrying `label`.
    """
    match label.kind:
        case OrbitKind.zero:
            return 1
        case OrbitKind.nilpotent:
            return q * q - 1
        case OrbitKind.split:
            return q * (q + 1)
        case _:
            return q * (q - 1)
