"""Exception types shared across the package."""


class CopulaOutageError(Exception):
    """Base class for all package errors."""


class DomainError(CopulaOutageError):
    """An argument is outside the mathematical domain of the operation."""


class NoBracket(CopulaOutageError):
    """Root finder called on an interval that does not bracket a sign change."""


class MaxIterExceeded(CopulaOutageError):
    """Iterative routine did not reach the requested tolerance."""


class InvalidInterval(CopulaOutageError):
    """Interval endpoints are ordered incorrectly."""


class TypeMismatch(CopulaOutageError):
    """A closed-form path was invoked with unsupported marginal types."""


class ConstructionUnverified(CopulaOutageError):
    """A worst-case joint construction failed its empirical attainment audit."""
