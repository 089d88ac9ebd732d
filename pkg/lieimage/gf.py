"""
Finite fields F_q, q = p^r with p odd, on top of :mod:`galois`.

Elements are identified with galois' integer representation: the
coefficient vector (c0, ..., c_{r-1}) in the polynomial basis maps to
c0 + c1*p + ... + c_{r-1}*p^(r-1).
"""
import functools
from dataclasses import dataclass
from typing import Any, Iterable, Optional, Sequence

import galois
import numpy as np

from . import logger
from .errors import (DivisionByZero, EvenCharacteristic, FieldMismatch,
                     InvalidExponent, NotPrime, ReducibleModulus)


@functools.lru_cache(maxsize=None)
def _galois_field(
    p: int, r: int, modulus: tuple[int, ...]
) -> type[galois.FieldArray]:
    if r == 1:
        return galois.GF(p)
    poly = galois.Poly(list(reversed(modulus)), field=galois.GF(p))
    return galois.GF(p**r, irreducible_poly=poly)


@dataclass(frozen=True)
class FieldDescriptor:
    """
    The field F_q. Two descriptors describe the same field iff `p`, `r` and
    `modulus` agree. `modulus` lists the coefficients little-endian, e.g.
    `(1, 0, 1)` is t^2 + 1.
    """
    p: int
    r: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def gf(self) -> type[galois.FieldArray]:
        """
        The galois FieldArray class backing this field.
        """
        return _galois_field(self.p, self.r, self.modulus)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def scalar(self, k: int) -> "FieldElement":
        """
        The image of the integer `k` in the prime subfield.
        """
        return FieldElement(self, k % self.p)

    def constant(self, k: int) -> galois.FieldArray:
        """
        Like `scalar`, as a 0-d galois array for vectorised code.
        """
        return self.gf(k % self.p)

    def array(self, values: Any) -> galois.FieldArray:
        return self.gf(np.asarray(values, dtype=np.int64))

    def elements_array(self) -> galois.FieldArray:
        return self.gf(np.arange(self.q, dtype=np.int64))

    def from_coefficients(
        self, coefficients: Sequence[int]
    ) -> "FieldElement":
        if len(coefficients) > self.r:
            raise ValueError(
                f"{self} elements have {self.r} coefficients, got "
                f"{len(coefficients)}"
            )
        value = sum(
            (c % self.p) * self.p**i for i, c in enumerate(coefficients)
        )
        return FieldElement(self, value)

    def text(self, value: int) -> str:
        """
        Textual form of an element value: decimal for prime fields,
        little-endian coefficient tuple otherwise.
        """
        if self.r == 1:
            return str(value)
        digits = _digits(value, self.p, self.r)
        return "(" + ",".join(str(c) for c in digits) + ")"

    def __str__(self) -> str:
        return f"F_{self.q}"


def to_ints(array: galois.FieldArray) -> np.ndarray:
    """
    Integer representation of a galois array as a plain numpy array.
    """
    return np.asarray(array.view(np.ndarray), dtype=np.int64)


def _digits(value: int, p: int, r: int) -> tuple[int, ...]:
    digits = []
    for _ in range(r):
        value, digit = divmod(value, p)
        digits.append(digit)
    return tuple(digits)


class FieldElement:
    """
    An element of a finite field. Immutable and hashable. Operations with
    elements of another field raise `FieldMismatch`; Python integers are
    read as elements of the prime subfield.
    """
    __slots__ = ("_field", "_value")

    def __init__(self, field: FieldDescriptor, value: int):
        """
        :param field: The owning field.
        :type field: FieldDescriptor
        :param value: Integer representation in `[0, q)`.
        :type value: int
        """
        value = int(value)
        if not 0 <= value < field.q:
            raise ValueError(f"{value} is not an element value of {field}")
        self._field = field
        self._value = value

    @property
    def field(self) -> FieldDescriptor:
        return self._field

    @property
    def value(self) -> int:
        return self._value

    @property
    def coefficients(self) -> tuple[int, ...]:
        return _digits(self._value, self._field.p, self._field.r)

    def _galois(self) -> galois.FieldArray:
        return self._field.gf(self._value)

    def _coerce(self, other: Any) -> Optional["FieldElement"]:
        if isinstance(other, FieldElement):
            if other._field != self._field:
                raise FieldMismatch(
                    f"Cannot combine elements of {self._field} and "
                    f"{other._field}"
                )
            return other
        if isinstance(other, (int, np.integer)):
            return self._field.scalar(int(other))
        return None

    def _wrap(self, array: galois.FieldArray) -> "FieldElement":
        return FieldElement(self._field, int(array))

    def __add__(self, other: Any) -> "FieldElement":
        other_ = self._coerce(other)
        if other_ is None:
            return NotImplemented
        return self._wrap(self._galois() + other_._galois())

    __radd__ = __add__

    def __sub__(self, other: Any) -> "FieldElement":
        other_ = self._coerce(other)
        if other_ is None:
            return NotImplemented
        return self._wrap(self._galois() - other_._galois())

    def __rsub__(self, other: Any) -> "FieldElement":
        other_ = self._coerce(other)
        if other_ is None:
            return NotImplemented
        return other_ - self

    def __mul__(self, other: Any) -> "FieldElement":
        other_ = self._coerce(other)
        if other_ is None:
            return NotImplemented
        return self._wrap(self._galois() * other_._galois())

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "FieldElement":
        other_ = self._coerce(other)
        if other_ is None:
            return NotImplemented
        return self * other_.inverse()

    def __rtruediv__(self, other: Any) -> "FieldElement":
        other_ = self._coerce(other)
        if other_ is None:
            return NotImplemented
        return other_ * self.inverse()

    def __neg__(self) -> "FieldElement":
        return self._wrap(-self._galois())

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            raise InvalidExponent(
                f"Exponent must be nonnegative, got {exponent}"
            )
        if exponent == 0:
            return self._field.one
        return self._wrap(self._galois() ** int(exponent))

    def inverse(self) -> "FieldElement":
        if self._value == 0:
            raise DivisionByZero(f"0 has no inverse in {self._field}")
        return self._wrap(np.reciprocal(self._galois()))

    def is_zero(self) -> bool:
        return self._value == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self._field == other._field and self._value == other._value

    def __hash__(self) -> int:
        return hash((self._field, self._value))

    def __repr__(self) -> str:
        return f"FieldElement({self._field}, {self.text()})"

    def __str__(self) -> str:
        return self.text()

    def text(self) -> str:
        return self._field.text(self._value)


@functools.lru_cache(maxsize=None)
def make_field(
    p: int, r: int = 1, modulus: Optional[tuple[int, ...]] = None
) -> FieldDescriptor:
    """
    Build a field descriptor for F_{p^r}.

    :param p: The characteristic, an odd prime.
    :type p: int
    :param r: The extension degree, at least 1.
    :type r: int
    :param modulus: Little-endian coefficients of a monic irreducible
    polynomial of degree `r`. If omitted the lexicographically smallest one
    is chosen.
    :type modulus: Optional[tuple[int, ...]]
    :raises NotPrime: `p` is not a prime.
    :raises EvenCharacteristic: `p` is 2.
    :raises ReducibleModulus: `modulus` is not monic irreducible of degree
    `r`.
    :return: The field descriptor.
    :rtype: FieldDescriptor
    """
    if p < 2 or not galois.is_prime(p):
        raise NotPrime(f"{p} is not a prime")
    if p == 2:
        raise EvenCharacteristic("Characteristic 2 is not supported")
    if r < 1:
        raise ValueError(f"Extension degree must be at least 1, got {r}")

    if r == 1:
        modulus = (0, 1)
    elif modulus is None:
        modulus = smallest_irreducible(p, r)
    else:
        modulus = tuple(int(c) for c in modulus)
        _check_modulus(p, r, modulus)

    field = FieldDescriptor(p, r, modulus)
    logger.debug(f"Built {field} with modulus {modulus}")
    return field


def _check_modulus(p: int, r: int, modulus: tuple[int, ...]) -> None:
    if len(modulus) != r + 1 or modulus[-1] != 1:
        raise ReducibleModulus(
            f"Modulus {modulus} is not a monic polynomial of degree {r}"
        )
    if any(not 0 <= c < p for c in modulus):
        raise ReducibleModulus(
            f"Modulus {modulus} has coefficients outside [0, {p})"
        )
    poly = galois.Poly(list(reversed(modulus)), field=galois.GF(p))
    if not poly.is_irreducible():
        raise ReducibleModulus(f"{poly} is reducible over F_{p}")


@functools.lru_cache(maxsize=None)
def smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    """
    Lexicographically smallest monic irreducible polynomial of degree `r`
    over F_p, compared on the coefficients from t^(r-1) down to t^0.

    :return: Little-endian coefficients.
    :rtype: tuple[int, ...]
    """
    prime_field = galois.GF(p)
    for integer in range(p**r, 2 * p**r):
        poly = galois.Poly.Int(integer, field=prime_field)
        if poly.is_irreducible():
            return tuple(int(c) for c in reversed(poly.coeffs))
    raise RuntimeError(f"No irreducible polynomial of degree {r} over F_{p}")


def field_from_order(
    q: int, modulus: Optional[tuple[int, ...]] = None
) -> FieldDescriptor:
    """
    Build F_q from its order.

    :raises EvenCharacteristic: `q` is a power of 2.
    :raises NotPrime: `q` is not a prime power.
    """
    if q >= 2 and q & (q - 1) == 0:
        raise EvenCharacteristic(f"q = {q} has characteristic 2")
    if q < 3 or not galois.is_prime_power(q):
        raise NotPrime(f"{q} is not a prime power")
    primes, exponents = galois.factors(q)
    return make_field(int(primes[0]), int(exponents[0]), modulus)


def parse_modulus(text: str) -> tuple[int, ...]:
    return tuple(int(c) for c in text.replace(" ", "").split(",") if c)


def parse_element(field: FieldDescriptor, text: str) -> FieldElement:
    """
    Read the textual form of `FieldElement.text`. Integers are reduced into
    the prime subfield.
    """
    text = text.strip()
    if text.startswith("("):
        inner = text.strip("()")
        return field.from_coefficients(
            [int(c) for c in inner.split(",") if c.strip()]
        )
    return field.scalar(int(text))


def _same_field(x: FieldElement, y: FieldElement) -> None:
    if x.field != y.field:
        raise FieldMismatch(
            f"Cannot combine elements of {x.field} and {y.field}"
        )


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    _same_field(x, y)
    return x + y


def sub(x: FieldElement, y: FieldElement) -> FieldElement:
    _same_field(x, y)
    return x - y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    _same_field(x, y)
    return x * y


def neg(x: FieldElement) -> FieldElement:
    return -x


def inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def pow(x: FieldElement, exponent: int) -> FieldElement:  # noqa: A001
    return x**exponent


def quadratic_character(a: FieldElement) -> int:
    """
    Euler's criterion: 0 for 0, +1 for nonzero squares, -1 otherwise.
    """
    if a.is_zero():
        return 0
    return 1 if a ** ((a.field.q - 1) // 2) == a.field.one else -1


@functools.lru_cache(maxsize=None)
def _square_table(field: FieldDescriptor) -> np.ndarray:
    squares = to_ints(field.elements_array() ** 2)
    table = np.zeros(field.q, dtype=bool)
    table[squares] = True
    return table


def square_table(field: FieldDescriptor) -> np.ndarray:
    """
    Boolean table indexed by element value, True on squares (0 included).
    """
    table = _square_table(field).copy()
    table.flags.writeable = False
    return table


def characters(field: FieldDescriptor, values: np.ndarray) -> np.ndarray:
    """
    Vectorised quadratic character of integer element values.
    """
    values = np.asarray(values, dtype=np.int64)
    result = np.where(_square_table(field)[values], 1, -1)
    return np.where(values == 0, 0, result)


def all_elements(field: FieldDescriptor) -> list[FieldElement]:
    return [FieldElement(field, value) for value in range(field.q)]


def sqrt(a: FieldElement) -> Optional[FieldElement]:
    """
    Smallest (by value) square root of `a`, or `None` for nonsquares.
    """
    roots = np.flatnonzero(to_ints(a.field.elements_array() ** 2) == a.value)
    if not roots.size:
        return None
    return FieldElement(a.field, int(roots[0]))


def odd_prime_powers(limit: int) -> Iterable[int]:
    """
    All odd prime powers q with 3 <= q <= limit, ascending.
    """
    for q in range(3, limit + 1, 2):
        if galois.is_prime_power(q):
            yield q
