from typing import Iterable, Optional


class LieImageError(Exception):
    """
    Base class of all errors raised by lieimage.
    """


class NotPrime(LieImageError):
    pass


class EvenCharacteristic(LieImageError):
    pass


class ReducibleModulus(LieImageError):
    pass


class FieldMismatch(LieImageError):
    pass


class DivisionByZero(LieImageError, ZeroDivisionError):
    pass


class InvalidExponent(LieImageError, ValueError):
    pass


class SingularMatrix(LieImageError):
    pass


class WordSyntaxError(LieImageError):
    def __init__(self, position: int, expected: Iterable[str]):
        """
        :param position: Offset into the parsed text where parsing failed.
        :type position: int
        :param expected: Literal tokens that would have been accepted.
        :type expected: Iterable[str]
        """
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        super().__init__(
            f"Unexpected input at position {position}, expected one of: "
            f"{' '.join(repr(e) for e in self.expected)}"
        )


class ArityError(LieImageError):
    pass


class MissingVariable(LieImageError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"No value assigned to variable x{index}")


class HypothesisViolation(LieImageError):
    def __init__(self, violations: Iterable[str]):
        self.violations = tuple(violations)
        super().__init__(
            "Parameters violate: " + "; ".join(self.violations)
        )


class NoWitnessInBudget(LieImageError):
    def __init__(self, budget: Optional[int], reason: str):
        """
        :param budget: Largest exponent searched. `None` when no budget can
        help because the goal is unsatisfiable.
        :type budget: Optional[int]
        :param reason: Human readable explanation.
        :type reason: str
        """
        self.budget = budget
        self.reason = reason
        if budget is None:
            super().__init__(f"No witness exists: {reason}")
        else:
            super().__init__(
                f"No witness with exponents <= {budget}: {reason}"
            )


class BudgetExceeded(LieImageError):
    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"Enumeration needs {required} evaluations, budget is {budget}"
        )


class ArityUnsupported(LieImageError):
    pass


class ZeroArgument(LieImageError):
    pass


class InapplicableAtQ(LieImageError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class UnknownProposition(LieImageError):
    pass
