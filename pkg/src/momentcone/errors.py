"""Exception types raised by the library."""


class MomentConeError(Exception):
    """Base class for all library errors."""


class InternalInvariantViolation(MomentConeError):
    """An internal postcondition failed. Always a bug, never bad input."""


class NotGoodCone(MomentConeError):
    """The cone does not satisfy the good-cone conditions."""


class ZeroFace(MomentConeError):
    """A witness was requested for the zero face."""


class ConsistencyFailure(MomentConeError):
    """Two independent routes to the same invariant disagree.

    Attributes:
      check: short identifier of the failing check.
    """

    def __init__(self, check: str, message: str):
        super().__init__(f"{check}: {message}")
        self.check = check


class ConeParseError(MomentConeError):
    """A cone file could not be parsed."""
