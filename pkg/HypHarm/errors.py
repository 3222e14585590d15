"""Exception hierarchy for HypHarm."""


class HypHarmError(Exception):
    """Base class for all HypHarm errors."""


class DomainError(HypHarmError, ValueError):
    """An operation was called outside its mathematical domain."""


class NoConvergence(HypHarmError, ArithmeticError):
    """A series hit its term cap before the stopping rule fired."""

    def __init__(self, message: str, terms: int = 0, partial_sum: float = 0.0):
        super().__init__(message)
        self.terms = terms
        self.partial_sum = partial_sum


class MethodMismatch(HypHarmError):
    """A quadrature method was requested that the integrand does not support."""


class ValidationError(HypHarmError):
    """A command-line configuration failed validation."""
