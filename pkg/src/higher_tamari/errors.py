"""Exception types raised across the package."""


class HigherTamariError(Exception):
    """Base class for all package errors."""


class InvalidObjectError(HigherTamariError, ValueError):
    """A triangulation, cubillage or other object fails validation."""


class InconsistentInversionSetError(InvalidObjectError):
    """An inversion set does not come from any admissible order."""

    def __init__(self, message="inversion set not consistent"):
        super().__init__(message)


class EnumerationLimitError(HigherTamariError, RuntimeError):
    """An enumeration exceeded its element or time budget."""

    def __init__(self, kind, n, delta, reached, limit):
        self.kind = kind
        self.n = n
        self.delta = delta
        self.reached = reached
        self.limit = limit
        super().__init__(
            f"{kind}(n={n}, delta={delta}) exceeded limit {limit} "
            f"(reached {reached})"
        )


class QuotientError(HigherTamariError, ValueError):
    """The relation induced on equivalence classes is not a partial order."""

    def __init__(self, message, classes):
        self.classes = classes
        super().__init__(message)


class WitnessError(HigherTamariError, RuntimeError):
    """A constructive certificate failed one of its checks."""
