"""Semantic exception hierarchy shared across the package."""


class HansonWrightError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(HansonWrightError, ValueError):
    """Malformed input: non-square matrix, non-finite entries, bad shapes."""


class DomainError(HansonWrightError, ValueError):
    """Argument outside the admissible interval of a bound or oracle.

    ``limit`` carries the violated endpoint so callers (and error messages)
    can report which bracket was broken.
    """

    def __init__(self, message, limit=None):
        super().__init__(message)
        self.limit = limit


class ConvergenceError(HansonWrightError, ArithmeticError):
    """Iterative eigensolver failed to converge; ``sweeps`` records the count."""

    def __init__(self, message, sweeps=None):
        super().__init__(message)
        self.sweeps = sweeps
