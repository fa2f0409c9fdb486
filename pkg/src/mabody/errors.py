"""Exception types shared across the library."""


class MabodyError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(MabodyError):
    pass


class ZeroDirection(MabodyError):
    pass


class NotSymmetric(MabodyError):
    pass


class NotOriginCentered(MabodyError):
    pass


class XNotInterior(MabodyError):
    pass


class EllipseNotContained(MabodyError):
    pass


class DegenerateProfile(MabodyError):
    pass


class PAtUnitValue(MabodyError):
    pass


class BodyParseError(MabodyError):
    """Raised when a body file cannot be parsed.

    Carries the 1-based line number of the offending input when known.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
