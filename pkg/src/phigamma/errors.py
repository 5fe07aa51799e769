"""Exception hierarchy shared across the package."""


class PhiGammaError(Exception):
    """Base class for all library errors."""


class DomainError(PhiGammaError):
    """Input outside an operator's domain (convergence region, non-unit, ...)."""


class PrecisionError(PhiGammaError):
    """Not enough p-adic precision to carry out or certify an operation."""


class ConsistencyError(PhiGammaError):
    """An internal cross-check failed (signals a bug or an invalid input)."""


class UnsolvableError(PhiGammaError):
    """A linear problem has no solution; `degree` names the failing slot."""

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree
