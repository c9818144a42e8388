"""Error taxonomy shared across the package.

Every failure mode that callers are expected to distinguish gets its own
class; the CLI maps these onto distinct exit codes.
"""
from __future__ import annotations


class DivisionByZero(ZeroDivisionError):
    """Division of a scalar by an exact zero."""


class DenominatorVanishes(ZeroDivisionError):
    """A substitution sent a denominator to zero."""


class NotDivisible(ArithmeticError):
    """Exact polynomial division left a nonzero remainder.

    The offending remainder rides along for diagnostics.
    """

    def __init__(self, remainder, message: str | None = None):
        self.remainder = remainder
        super().__init__(message or f"not divisible, remainder {remainder}")


class ZeroTerm(ValueError):
    """A sequence term needed inside a factorial is zero."""

    def __init__(self, index: int, sequence: str = ""):
        self.index = index
        self.sequence = sequence
        where = f" of {sequence}" if sequence else ""
        super().__init__(f"term {index}{where} is zero")


class EqualRoots(ValueError):
    """The characteristic roots coincide, so the Binet form degenerates."""


class EqualIndices(ValueError):
    """A recurrence coefficient formula needs two distinct indices."""


class ZeroCoefficient(ValueError):
    """The linear recurrence coefficient s is zero where 1/s is required."""


class NotAdmissible(ValueError):
    """A weight sequence fails the nonnegative-integer binomial test."""


class UnsupportedField(ValueError):
    """Subspace counting is only implemented over small finite fields."""

    def __init__(self, order: int):
        self.order = order
        super().__init__(f"unsupported field order {order} (supported: 2, 3, 4)")


class ParseError(ValueError):
    """A scalar expression could not be parsed."""
