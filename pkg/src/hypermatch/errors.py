"""Exception hierarchy shared by every module."""


class HypermatchError(Exception):
    """Base class for all domain errors raised by the package."""


class ValidationError(HypermatchError, ValueError):
    """An edge, vertex or family failed validation."""


class ParseError(ValidationError):
    """Malformed SHG/SHGM text. Carries the offending 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ArithmeticRangeError(HypermatchError, OverflowError):
    """An exact integer result does not fit the 128-bit cap."""


class UnsupportedUniformityError(HypermatchError, ValueError):
    """The operation is undefined for the family's uniformity (e.g. link of a 1-uniform family)."""


class PreconditionError(HypermatchError, ValueError):
    """Inputs do not satisfy the hypotheses an operation requires."""


class ResourceError(HypermatchError):
    """A search exhausted its node or wall-clock budget before reaching a proven answer."""


class ConsistencyError(HypermatchError, AssertionError):
    """An internal invariant broke. Indicates an implementation bug, never bad input."""
