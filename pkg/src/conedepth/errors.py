"""Exception types raised by conedepth."""


class ConeDepthError(Exception):
    """Base class for all library errors."""


class DegenerateCone(ConeDepthError, ValueError):
    """Cone generators are linearly dependent (the cone is a ray)."""


class UnsupportedCone(ConeDepthError, ValueError):
    """Cone is a point, a line or a halfspace; only pointed 2-generator cones are handled."""


class OutOfRange(ConeDepthError, ValueError):
    """A parameter (probability level, segment parameter) is outside its domain."""


class EmptyInput(ConeDepthError, ValueError):
    """An operation received an empty collection."""


class InvalidState(ConeDepthError, RuntimeError):
    """A sweep invariant was violated (e.g. a permutation that was not tie-reordered)."""


class ParseError(ConeDepthError, ValueError):
    """Malformed input file. ``line`` is 1-based."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyFile(ParseError):
    """Input file holds no data rows."""
