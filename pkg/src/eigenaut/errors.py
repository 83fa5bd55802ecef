"""Exception types shared across the package."""


class EigenautError(Exception):
    """Base class for all package-specific errors."""


class ToleranceError(EigenautError):
    """A numerical guard band was violated; results would be unreliable.

    Carries a human-readable diagnostic explaining which quantity fell
    inside the ambiguous band and which tolerance knob controls it.
    """


class JacobiConvergenceError(ToleranceError):
    """Eigenvalue sweeps did not reduce the off-diagonal mass in time."""


class CapExceeded(EigenautError):
    """A symmetry listing grew past the configured cap."""

    def __init__(self, message, *, size=None, cap=None):
        super().__init__(message)
        self.size = size
        self.cap = cap


class GraphFormatError(EigenautError):
    """Malformed graph input; message includes the offending line."""


class InconsistencyError(EigenautError):
    """An internal invariant was breached; indicates a bug, not bad input."""
