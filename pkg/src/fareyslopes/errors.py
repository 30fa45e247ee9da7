"""Shared exception types.

Every failure mode that callers are expected to catch lives here; modules
raise plain ValueError only for malformed arguments that indicate a caller
bug rather than a data-dependent condition.
"""


class FareySlopesError(Exception):
    """Base class for all library-specific errors."""


class PrecisionExhausted(FareySlopesError):
    """A finite partial-quotient prefix cannot decide the question asked.

    ``needed_depth`` carries a hint: the number of quotients that would have
    been consumed next.  Callers can re-run with a deeper prefix.
    """

    def __init__(self, message, needed_depth=None):
        super().__init__(message)
        self.needed_depth = needed_depth


class MismatchedTheta(FareySlopesError):
    """Two lattice elements over different irrationals were combined."""


class SeedRejected(FareySlopesError):
    """A constructor seed violates its arithmetic precondition."""


class PrimePickerExhausted(FareySlopesError):
    """No fresh prime was found below the internal search cap."""


class NoPath(FareySlopesError):
    """The requested pair of vertices is not joined by a directed path."""


class NotDivisionPoint(FareySlopesError):
    """A lattice point does not occur as a division point at any level."""


class TolTooTight(FareySlopesError):
    """The requested tolerance is unreachable within the depth cap."""


class UnsupportedObject(FareySlopesError):
    """The renderer has no drawing rule for the object handed to it."""
