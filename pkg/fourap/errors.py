# fourap/errors.py


class FourApError(Exception):
    """Base class for every error raised by the fourap helpers."""


class DomainError(FourApError, ValueError):
    """An input lies outside the domain of the operation."""


class PreconditionRefuted(DomainError):
    """A domain error whose failing check is recorded as a replayable refutation."""

    def __init__(self, refutation):
        self.refutation = refutation
        super().__init__(refutation.message)


class OffCurveError(DomainError):
    """A point does not satisfy the equation of the curve it was given for."""

    def __init__(self, equation, point):
        self.equation = equation
        self.point = point
        super().__init__(f"point {point} does not satisfy {equation}")


class InternalConsistencyError(FourApError, AssertionError):
    """A post-condition re-check failed; this always indicates a bug."""
