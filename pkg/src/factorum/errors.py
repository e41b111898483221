"""Exception hierarchy shared by every module."""

from __future__ import annotations


class FactorumError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(FactorumError, ValueError):
    """An operation was called with arguments violating its precondition."""


class CapacityError(FactorumError):
    """An exhaustive routine was asked to exceed its hard size cap."""


class PreconditionError(UsageError):
    """The hypotheses of an existence statement do not hold for the input."""


class InvariantError(FactorumError, AssertionError):
    """An internal postcondition failed; this indicates a bug."""


class ParseError(FactorumError, ValueError):
    """A text file could not be parsed.

    ``line`` is the 1-based line number of the offending line, or ``None``
    when the problem is not attached to a single line.
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
