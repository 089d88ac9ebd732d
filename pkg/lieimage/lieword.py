"""
Lie words: abstract syntax, the textual word language, evaluation on
sl2(F_q), builders for the Engel word families and the witness search for
their parameters.

Words are written in the variables x1, x2, ... . All family builders put
the "A" slot in x1 and the "X" slot in x2, e.g. the Engel difference
ad_A^i(X) - ad_A^j(X) is ``ad(x1, i, x2) - ad(x1, j, x2)``.
"""
import functools
try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

import lark
from lark import Lark, Transformer, v_args
from lark.exceptions import (UnexpectedCharacters, UnexpectedEOF,
                             UnexpectedInput, UnexpectedToken, VisitError)
from lark.lexer import PatternStr

from . import logger, settings
from .enums import Family, SearchGoal
from .errors import (ArityError, FieldMismatch, HypothesisViolation,
                     InvalidExponent, MissingVariable, NoWitnessInBudget,
                     WordSyntaxError)
from .gf import FieldDescriptor
from .paths import CORPUS_PATH, GRAMMAR_PATH
from .sl2 import Sl2Array, Sl2Element, ad_pow, as_array, bracket


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ArityError(
                f"Variable indices start at 1, got x{self.index}"
            )


@dataclass(frozen=True)
class Bracket:
    left: "LieWord"
    right: "LieWord"


@dataclass(frozen=True)
class Sum:
    terms: tuple["LieWord", ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("A sum needs at least one term")


@dataclass(frozen=True)
class Scalar:
    coefficient: int
    body: "LieWord"


@dataclass(frozen=True)
class AdPow:
    """
    ad_base^exponent(argument), i.e. `exponent` nested brackets with
    `base` on the left.
    """
    base: "LieWord"
    exponent: int
    argument: "LieWord"

    def __post_init__(self) -> None:
        if self.exponent < 1:
            raise ArityError(
                f"ad exponent must be at least 1, got {self.exponent}"
            )


LieWord = Union[Var, Bracket, Sum, Scalar, AdPow]

Value = Union[Sl2Element, Sl2Array]


def variables(w: LieWord) -> set[int]:
    match w:
        case Var(index):
            return {index}
        case Bracket(left, right):
            return variables(left) | variables(right)
        case Sum(terms):
            return set().union(*(variables(t) for t in terms))
        case Scalar(_, body):
            return variables(body)
        case AdPow(base, _, argument):
            return variables(base) | variables(argument)
    raise TypeError(f"Not a Lie word: {w!r}")


def arity(w: LieWord) -> int:
    """
    The largest variable index occurring in `w`.
    """
    return max(variables(w))


def normalize(w: LieWord) -> LieWord:
    """
    Rewrite every `AdPow` as nested `Bracket`s.
    """
    match w:
        case Var():
            return w
        case Bracket(left, right):
            return Bracket(normalize(left), normalize(right))
        case Sum(terms):
            return Sum(tuple(normalize(t) for t in terms))
        case Scalar(coefficient, body):
            return Scalar(coefficient, normalize(body))
        case AdPow(base, exponent, argument):
            base_ = normalize(base)
            result = normalize(argument)
            for _ in range(exponent):
                result = Bracket(base_, result)
            return result
    raise TypeError(f"Not a Lie word: {w!r}")


# Parsing

_TERMINAL_NAMES = {
    "VAR": "variable",
    "INT": "integer",
    "$END": "end of input",
}


@v_args(inline=True)
class _WordBuilder(Transformer):
    def start(self, expr: LieWord) -> LieWord:
        return expr

    def expr(self, head: LieWord, *tail: LieWord) -> LieWord:
        if not tail:
            return head
        return Sum((head, *tail))

    def var(self, token: lark.Token) -> Var:
        return Var(int(token[1:]))

    def bracket(self, left: LieWord, right: LieWord) -> Bracket:
        return Bracket(left, right)

    def ad(self, base: LieWord, exponent: lark.Token,
           argument: LieWord) -> AdPow:
        return AdPow(base, int(exponent), argument)

    def scaled(
        self, coefficient: lark.Token, atom: LieWord
    ) -> tuple[Optional[int], LieWord]:
        return int(coefficient), atom

    def unscaled(self, atom: LieWord) -> tuple[Optional[int], LieWord]:
        return None, atom

    def positive(self, term: tuple[Optional[int], LieWord]) -> LieWord:
        coefficient, atom = term
        return atom if coefficient is None else Scalar(coefficient, atom)

    def negative(self, term: tuple[Optional[int], LieWord]) -> LieWord:
        coefficient, atom = term
        return Scalar(-(1 if coefficient is None else coefficient), atom)

    plus = positive
    minus = negative


@functools.lru_cache(maxsize=None)
def _parser() -> Lark:
    return Lark.open(str(GRAMMAR_PATH), parser="lalr")


def _terminal_text(parser: Lark, name: str) -> str:
    if name in _TERMINAL_NAMES:
        return _TERMINAL_NAMES[name]
    try:
        pattern = parser.get_terminal(name).pattern
    except KeyError:
        return name
    if isinstance(pattern, PatternStr):
        return str(pattern.value)
    return name.lower()


def _syntax_error(
    parser: Lark, text: str, error: UnexpectedInput
) -> WordSyntaxError:
    expected: Iterable[str]
    if isinstance(error, UnexpectedToken):
        expected = error.expected
        if error.token.type == "$END":
            position = len(text)
        else:
            position = error.token.start_pos or 0
    elif isinstance(error, UnexpectedCharacters):
        expected = error.allowed or ()
        position = error.pos_in_stream
    elif isinstance(error, UnexpectedEOF):
        expected = error.expected
        position = len(text)
    else:
        expected = ()
        position = error.pos_in_stream or 0
    return WordSyntaxError(
        position, (_terminal_text(parser, name) for name in expected)
    )


def parse(text: str) -> LieWord:
    """
    Parse the textual form of a word.

    :param text: E.g. ``"[x1, x2] - ad(x1, 2, x2)"``.
    :type text: str
    :raises WordSyntaxError: `text` is not a word. Carries the failing
    offset and the tokens accepted there.
    :raises ArityError: An ad exponent below 1 or a variable ``x0``.
    :return: The abstract syntax tree.
    :rtype: LieWord
    """
    parser = _parser()
    try:
        tree = parser.parse(text)
    except UnexpectedInput as e:
        raise _syntax_error(parser, text, e) from None
    try:
        return _WordBuilder().transform(tree)
    except VisitError as e:
        raise e.orig_exc from None


# Rendering

def _atom_text(w: LieWord) -> str:
    if isinstance(w, (Sum, Scalar)):
        return f"({render(w)})"
    return render(w)


def _head_text(w: LieWord) -> str:
    if isinstance(w, Scalar):
        if w.coefficient == -1:
            return f"-{_atom_text(w.body)}"
        if w.coefficient < 0:
            return f"-{-w.coefficient}*{_atom_text(w.body)}"
        return f"{w.coefficient}*{_atom_text(w.body)}"
    return _atom_text(w)


def _tail_text(w: LieWord) -> str:
    if isinstance(w, Scalar) and w.coefficient < 0:
        return f" - {_head_text(w)[1:]}"
    return f" + {_head_text(w)}"


def render(w: LieWord) -> str:
    """
    Canonical text of a word. `parse` reads it back to an equal tree.
    """
    match w:
        case Var(index):
            return f"x{index}"
        case Bracket(left, right):
            return f"[{render(left)}, {render(right)}]"
        case AdPow(base, exponent, argument):
            return f"ad({render(base)}, {exponent}, {render(argument)})"
        case Scalar():
            return _head_text(w)
        case Sum(terms):
            head, *tail = terms
            return _head_text(head) + "".join(_tail_text(t) for t in tail)
    raise TypeError(f"Not a Lie word: {w!r}")


# Evaluation

def _add(x: Value, y: Value) -> Value:
    if isinstance(x, Sl2Element) and isinstance(y, Sl2Element):
        return x + y
    return as_array(x) + as_array(y)


def _scale(x: Value, k: int) -> Value:
    if isinstance(x, Sl2Element):
        return x.field.scalar(k) * x
    return x.scale(x.field.constant(k))


def _evaluate(w: LieWord, assignment: Mapping[int, Value]) -> Value:
    match w:
        case Var(index):
            return assignment[index]
        case Bracket(left, right):
            return bracket(
                _evaluate(left, assignment), _evaluate(right, assignment)
            )
        case Sum(terms):
            return functools.reduce(
                _add, (_evaluate(t, assignment) for t in terms)
            )
        case Scalar(coefficient, body):
            return _scale(_evaluate(body, assignment), coefficient)
        case AdPow(base, exponent, argument):
            return ad_pow(
                _evaluate(base, assignment),
                exponent,
                _evaluate(argument, assignment),
            )
    raise TypeError(f"Not a Lie word: {w!r}")


def evaluate(w: LieWord, assignment: Mapping[int, Value]) -> Value:
    """
    Evaluate `w` with variable ``x_i`` set to ``assignment[i]``. Values may
    be single elements or broadcastable `Sl2Array` grids.

    :raises MissingVariable: A variable of `w` has no value.
    :raises FieldMismatch: The values live in different fields.
    """
    missing = sorted(variables(w) - set(assignment))
    if missing:
        raise MissingVariable(missing[0])
    fields = {value.field for value in assignment.values()}
    if len(fields) > 1:
        raise FieldMismatch(
            "Assignment mixes fields " + ", ".join(sorted(map(str, fields)))
        )
    return _evaluate(w, assignment)


def assign(*values: Value) -> dict[int, Value]:
    """
    The assignment x1 -> values[0], x2 -> values[1], ...
    """
    return {index: value for index, value in enumerate(values, start=1)}


# Word families

A = Var(1)
X = Var(2)


def _ad(n: int) -> AdPow:
    return AdPow(A, n, X)


def _engel_diff(i: int, j: int) -> Sum:
    return Sum((_ad(i), Scalar(-1, _ad(j))))


def _commutator(i: int, j: int) -> Bracket:
    return Bracket(_ad(i), _ad(j))


def _check_exponents(**exponents: int) -> None:
    for name, value in exponents.items():
        if value < 1:
            raise InvalidExponent(f"{name} must be at least 1, got {value}")


def build_engel_diff(i: int, j: int) -> LieWord:
    """
    ad_A^i(X) - ad_A^j(X).
    """
    _check_exponents(i=i, j=j)
    if i == j:
        raise InvalidExponent(f"Engel difference needs i != j, got {i}")
    return _engel_diff(i, j)


def build_engel_commutator(i: int, j: int) -> LieWord:
    """
    [ad_A^i(X), ad_A^j(X)].
    """
    _check_exponents(i=i, j=j)
    return _commutator(i, j)


@dataclass(frozen=True)
class WnParams:
    """
    Parameters of w_n = [...[ad^i - ad^j, [ad^i1, ad^j1]], ...,
    [ad^in, ad^jn]].
    """
    i: int
    j: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def sigma(self) -> int:
        return sum(i_r + j_r for i_r, j_r in self.pairs)

    @property
    def admits_nilpotents(self) -> bool:
        """
        The one parameter shape where the determinant law degenerates at
        a = 0 and w_n takes nonzero nilpotent values.
        """
        return (
            self.i % 2 == 1 and self.j == 1
            and self.n == 1 and self.sigma == 3
        )

    def violations(self) -> list[str]:
        found = []
        if self.j < 1 or any(min(pair) < 1 for pair in self.pairs):
            found.append("exponents >= 1")
        if self.i <= self.j:
            found.append("i > j")
        if (self.i - self.j) % 2:
            found.append("i - j even")
        if self.n < 1:
            found.append("n >= 1")
        for r, (i_r, j_r) in enumerate(self.pairs, start=1):
            if (i_r + j_r) % 2 == 0:
                found.append(f"i_{r} + j_{r} odd")
        if self.sigma < 3 * self.n:
            found.append("sigma >= 3n")
        return found

    def validate(self) -> "WnParams":
        violations = self.violations()
        if violations:
            raise HypothesisViolation(violations)
        return self

    def text(self) -> str:
        pairs = ",".join(f"{i_r}:{j_r}" for i_r, j_r in self.pairs)
        return f"i={self.i} j={self.j} pairs={pairs}"


@dataclass(frozen=True)
class ZeroBlock:
    """
    The extra block [ad^alpha0 - ad^beta0, [ad^i0, ad^j0]] of w0_{m,n}.
    """
    alpha0: int
    beta0: int
    i0: int
    j0: int

    def text(self) -> str:
        return f"{self.alpha0}:{self.beta0}:{self.i0}:{self.j0}"


@dataclass(frozen=True)
class WmnParams:
    """
    Parameters of w_{m,n} = [w_{m-1,n}, ad^alpha_m - ad^beta_m] with
    w_{1,n} = w_n(alpha_1, beta_1, pairs), and of the variant w0_{m,n}
    when `zero_block` is set.
    """
    alphas: tuple[int, ...]
    betas: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    zero_block: Optional[ZeroBlock] = None

    @property
    def m(self) -> int:
        return len(self.alphas)

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def inner(self) -> WnParams:
        return WnParams(self.alphas[0], self.betas[0], self.pairs)

    @property
    def sigma(self) -> int:
        return self.inner.sigma

    @property
    def sigma0(self) -> int:
        """
        sigma including the zero block pair (i0, j0).
        """
        if self.zero_block is None:
            return self.sigma
        return self.sigma + self.zero_block.i0 + self.zero_block.j0

    @property
    def exponent_total(self) -> int:
        """
        sum(beta) + sigma, with beta0 and the pair (i0, j0) included for
        the zero block variant. The closed form determinant carries
        4^(exponent_total - 1).
        """
        total = sum(self.betas) + self.sigma0
        if self.zero_block is not None:
            total += self.zero_block.beta0
        return total

    @property
    def beta_pattern(self) -> Optional[int]:
        """
        Which of the two admissible parity patterns of beta_3 .. beta_m
        holds: 1 when the leading ones (an even count) are even and the
        rest odd, 2 when m is odd and only beta_m is even.
        """
        if self.m < 2:
            return None
        rest = [beta % 2 for beta in self.betas[2:]]
        for m1 in range(1, self.m // 2 + 1):
            cut = 2 * m1 - 2
            if not any(rest[:cut]) and all(rest[cut:]):
                return 1
        if self.m % 2 and self.m >= 3 and all(rest[:-1]) and not rest[-1]:
            return 2
        return None

    def _common_violations(self) -> list[str]:
        found = []
        if len(self.alphas) != len(self.betas):
            found.append("as many alphas as betas")
        if self.m < 1:
            found.append("m >= 1")
        if self.n < 1:
            found.append("n >= 1")
        exponents = [*self.alphas, *self.betas]
        exponents += [x for pair in self.pairs for x in pair]
        if any(x < 1 for x in exponents):
            found.append("exponents >= 1")
        for s, (alpha, beta) in enumerate(
            zip(self.alphas, self.betas), start=1
        ):
            if alpha <= beta or (alpha - beta) % 2:
                found.append(f"alpha_{s} - beta_{s} positive and even")
        for r, (i_r, j_r) in enumerate(self.pairs, start=1):
            if (i_r + j_r) % 2 == 0:
                found.append(f"i_{r} + j_{r} odd")
        if self.m >= 2 and (self.betas[0] + self.betas[1] + self.n) % 2 == 0:
            found.append("beta_1 + beta_2 + n odd")
        return found

    def _wmn_violations(self) -> list[str]:
        if self.m == 1:
            return self.inner.violations()
        found = self._common_violations()
        if found:
            return found
        if sum(self.betas) + self.sigma - 2 * self.n - self.m - 1 <= 0:
            found.append("sum(beta) + sigma - 2n - m - 1 > 0")
        if self.beta_pattern is None:
            found.append("beta parity pattern")
        return found

    def _w0_violations(self, zero: ZeroBlock) -> list[str]:
        found = self._common_violations()
        if min(zero.alpha0, zero.beta0, zero.i0, zero.j0) < 1:
            found.append("zero block exponents >= 1")
        if (zero.i0 + zero.j0) % 2 == 0:
            found.append("i_0 + j_0 odd")
        if zero.beta0 % 2 == 0:
            found.append("beta_0 odd")
        if self.n % 2 == 0:
            found.append("n odd")
        if zero.alpha0 <= zero.beta0 or (zero.alpha0 - zero.beta0) % 2:
            found.append("alpha_0 - beta_0 positive and even")
        if self.exponent_total - 2 * self.n - self.m <= 4:
            found.append("sum(beta) + sigma_0 - 2n - m > 4")
        if self.beta_pattern != 2:
            found.append("m odd, beta_3 .. beta_(m-1) odd, beta_m even")
        return found

    def violations(self) -> list[str]:
        """
        Every failed hypothesis of w_{m,n}, or of w0_{m,n} when the zero
        block is set.
        """
        if self.zero_block is None:
            return self._wmn_violations()
        return self._w0_violations(self.zero_block)

    def validate(self) -> "WmnParams":
        violations = self.violations()
        if violations:
            raise HypothesisViolation(violations)
        return self

    def without_zero_block(self) -> "WmnParams":
        return replace(self, zero_block=None)

    def text(self) -> str:
        parts = [
            "alphas=" + ",".join(map(str, self.alphas)),
            "betas=" + ",".join(map(str, self.betas)),
            "pairs=" + ",".join(f"{i}:{j}" for i, j in self.pairs),
        ]
        if self.zero_block is not None:
            parts.append(f"zero={self.zero_block.text()}")
        return " ".join(parts)


Params = Union[WnParams, WmnParams]


def _w_n_word(p: WnParams) -> LieWord:
    (i_1, j_1), *rest = p.pairs
    word: LieWord = Bracket(_engel_diff(p.i, p.j), _commutator(i_1, j_1))
    for i_r, j_r in rest:
        word = Bracket(word, _commutator(i_r, j_r))
    return word


def _w_mn_word(p: WmnParams) -> LieWord:
    word = _w_n_word(p.inner)
    for alpha, beta in zip(p.alphas[1:], p.betas[1:]):
        word = Bracket(word, _engel_diff(alpha, beta))
    return word


def build_w_n(p: WnParams) -> LieWord:
    """
    :raises HypothesisViolation: Listing every failed condition.
    """
    return _w_n_word(p.validate())


def build_w_mn(p: WmnParams) -> LieWord:
    """
    Build w_{m,n}. A zero block is ignored, for m = 1 this is `build_w_n`
    of `p.inner`.

    :raises HypothesisViolation: Listing every failed condition.
    """
    p = p.without_zero_block()
    if p.m == 1:
        return build_w_n(p.inner)
    return _w_mn_word(p.validate())


def build_w0_mn(p: WmnParams) -> LieWord:
    """
    Build [[ad^alpha0 - ad^beta0, [ad^i0, ad^j0]], w_{m,n}].

    :raises HypothesisViolation: Listing every failed condition, including
    a missing zero block.
    """
    if p.zero_block is None:
        raise HypothesisViolation(["zero block present"])
    p.validate()
    zero = p.zero_block
    head = Bracket(
        _engel_diff(zero.alpha0, zero.beta0), _commutator(zero.i0, zero.j0)
    )
    return Bracket(head, _w_mn_word(p))


def build_family(family: Family, params: Any) -> LieWord:
    """
    Build a family word. Engel families take an ``(i, j)`` pair.
    """
    match family:
        case Family.engel_diff:
            return build_engel_diff(*params)
        case Family.engel_commutator:
            return build_engel_commutator(*params)
        case Family.wn:
            return build_w_n(params)
        case Family.wmn:
            return build_w_mn(params)
        case Family.w0mn:
            return build_w0_mn(params)
    raise ValueError(f"Unknown family {family}")


def params_from_mapping(
    family: Family, mapping: Mapping[str, Any]
) -> Any:
    """
    Family parameters from a table of parsed values, e.g.
    ``{"alphas": (4, 4), "betas": (2, 2), "pairs": ((1, 2),)}``.

    :raises KeyError: A required key is missing.
    """
    pairs = tuple(tuple(pair) for pair in mapping.get("pairs", ()))
    match family:
        case Family.engel_diff | Family.engel_commutator:
            return int(mapping["i"]), int(mapping["j"])
        case Family.wn:
            return WnParams(int(mapping["i"]), int(mapping["j"]), pairs)
        case Family.wmn | Family.w0mn:
            zero = mapping.get("zero")
            return WmnParams(
                tuple(int(x) for x in mapping["alphas"]),
                tuple(int(x) for x in mapping["betas"]),
                pairs,
                None if zero is None else ZeroBlock(*map(int, zero)),
            )
    raise ValueError(f"Unknown family {family}")


def family_of(params: Params) -> Family:
    if isinstance(params, WnParams):
        return Family.wn
    return Family.wmn if params.zero_block is None else Family.w0mn


# Witness search

def _odd_divisors(n: int) -> list[int]:
    return [d for d in range(3, n + 1, 2) if n % d == 0]


def _shift_first_pair(
    pairs: Sequence[tuple[int, int]], k: int
) -> tuple[tuple[int, int], ...]:
    (i_1, j_1), *rest = pairs
    return ((i_1, j_1 + 2 * k), *rest)


def _search_missed_orbits(q: int, limit: int) -> WnParams:
    if q <= 3 or q % 8 not in (3, 7):
        raise NoWitnessInBudget(None, f"q = {q} is not 3 or 7 mod 8, q > 3")
    n = (q - 3) // 4
    j = 1 if q % 8 == 3 else 2
    base = [(1, 2)] * n
    for k in range((limit - 2) // 2 + 1):
        params = WnParams(j + 2, j, _shift_first_pair(base, k))
        if (j - 2 * n - 1 + params.sigma) % (q - 1) == 2 % (q - 1):
            return params.validate()
    raise NoWitnessInBudget(limit, "j - 2n - 1 + sigma = 2 mod (q - 1)")


def _search_q29_example(q: int, limit: int) -> WnParams:
    if q != 29:
        raise NoWitnessInBudget(None, "the example is stated for q = 29")
    base = [(1, 2)] * 3
    for k in range((limit - 2) // 2 + 1):
        params = WnParams(4, 2, _shift_first_pair(base, k))
        if params.sigma % 28 == 7:
            return params.validate()
    raise NoWitnessInBudget(limit, "sigma = 7 mod 28")


def _search_odd_gamma(
    q: int, limit: int, gamma: Optional[int], c: int
) -> WmnParams:
    divisors = _odd_divisors(q - 1)
    if q <= 3 or not divisors:
        raise NoWitnessInBudget(
            None, f"q - 1 = {q - 1} has no odd divisor > 1 (or q = 3)"
        )
    gamma = divisors[0] if gamma is None else gamma
    if gamma not in divisors:
        raise NoWitnessInBudget(
            None, f"gamma = {gamma} is not an odd divisor > 1 of {q - 1}"
        )
    if c not in (2, q - 1):
        raise NoWitnessInBudget(None, f"c must be 2 or {q - 1}, got {c}")

    for m in range(2, limit + 1):
        if 2 * m % (q - 1):
            continue
        for n in range(1, limit + 1):
            if (2 * n + m) % (q - 1):
                continue
            witness = _odd_gamma_exponents(q, limit, gamma, c, m, n)
            if witness is not None:
                logger.debug(f"odd-gamma witness at q = {q}: {witness}")
                return witness
    raise NoWitnessInBudget(
        limit, f"sum(beta) + sigma = {gamma} mod {q - 1}"
    )


def _odd_gamma_exponents(
    q: int, limit: int, gamma: int, c: int, m: int, n: int
) -> Optional[WmnParams]:
    for beta1 in range(1, 4):
        for beta2 in range(1, 4):
            if (beta1 + beta2 + n) % 2 == 0:
                continue
            betas = (beta1, beta2) + (1,) * (m - 2)
            alphas = tuple(beta + c for beta in betas)
            for k in range((limit - 2) // 2 + 1):
                params = WmnParams(
                    alphas, betas, _shift_first_pair([(1, 2)] * n, k)
                )
                if params.exponent_total % (q - 1) != gamma % (q - 1):
                    continue
                if not params.violations():
                    return params
                break
    return None


def _search_even_gamma(q: int, gamma: Optional[int]) -> WmnParams:
    # beta_0, n, beta_3 .. beta_(m-1) and m are odd, beta_m and
    # beta_1 + beta_2 are even: sum(beta) is odd while sigma_0 sums n + 1
    # odd pair totals, so sum(beta) + sigma_0 is odd.
    if gamma is not None and (gamma % 2 or (q - 1) % gamma):
        raise NoWitnessInBudget(
            None, f"gamma = {gamma} is not an even divisor of {q - 1}"
        )
    raise NoWitnessInBudget(
        None,
        "the hypotheses force sum(beta) + sigma_0 to be odd, so it is never "
        "congruent to an even gamma mod (q - 1)",
    )


def search_params(
    goal: SearchGoal,
    field: FieldDescriptor,
    gamma: Optional[int] = None,
    c: int = 2,
    search_factor: Optional[int] = None,
) -> Params:
    """
    Deterministic smallest-first search for family parameters meeting the
    side conditions of `goal` over `field`.

    :param goal: What the witness must achieve.
    :type goal: SearchGoal
    :param field: The field F_q.
    :type field: FieldDescriptor
    :param gamma: The exponent residue for the gamma goals. Defaults to the
    smallest admissible one.
    :type gamma: Optional[int]
    :param c: The common difference alpha_s - beta_s, 2 or q - 1.
    :type c: int
    :param search_factor: Exponents are searched up to
    `search_factor * (q - 1)`. Defaults to the current settings.
    :type search_factor: Optional[int]
    :raises NoWitnessInBudget: No witness within the exponent bound, or
    (with budget `None`) none at all for this q.
    :return: Validated parameters.
    :rtype: WnParams | WmnParams
    """
    if search_factor is None:
        search_factor = settings.current().search_factor
    q = field.q
    limit = search_factor * (q - 1)
    logger.debug(f"Searching {goal} witness over {field}, limit {limit}")
    match goal:
        case SearchGoal.missed_orbits:
            return _search_missed_orbits(q, limit)
        case SearchGoal.q29_example:
            return _search_q29_example(q, limit)
        case SearchGoal.odd_gamma:
            return _search_odd_gamma(q, limit, gamma, c)
        case SearchGoal.even_gamma:
            return _search_even_gamma(q, gamma)
    raise ValueError(f"Unknown search goal {goal}")


class WordCorpus:
    """
    Reference words shipped with the package: two variable words for
    strategy cross-checks and canonical strings for the parser.
    """
    def __init__(self, path: Path | str = CORPUS_PATH):
        """
        :param path: Path to the toml corpus.
        :type path: Path | str
        """
        with open(path, mode="rb") as fp:
            specs = tomllib.load(fp)

        self.equivalence: list[str] = list(specs["equivalence"])
        self.round_trip: list[str] = list(specs["round_trip"])

    def equivalence_words(self) -> list[LieWord]:
        return [parse(text) for text in self.equivalence]
