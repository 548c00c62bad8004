"""Exception types shared across the package."""


class NotFoundError(LookupError):
    """A bounded search finished without finding what it was looking for."""


class UnsupportedDegreeError(ValueError):
    """The requested operation is only defined for certain trinomial degrees."""


class VerificationError(RuntimeError):
    """Two independent computations of the same quantity disagreed."""
