"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """Raised when an argument leaves the mathematical domain of an operation."""


class StabilityError(RuntimeError):
    """Raised when the explicit time step cannot be stabilized by rejection."""


class InsufficientData(ValueError):
    """Raised when a verification check receives too few snapshots."""


class DegenerateError(ArithmeticError):
    """Raised when a residual denominator underflows to a meaningless scale."""


class BoundaryLeakWarning(UserWarning):
    """Issued when the would-be outflow through the truncated boundary grows large."""
