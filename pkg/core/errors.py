"""
Exception hierarchy shared by every module.
"""

from typing import Optional


class BrooksError(Exception):
    """Base class for all library errors."""


class GraphFormatError(BrooksError, ValueError):
    """Malformed graph or list text."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class GraphValidationError(BrooksError, ValueError):
    """Graph violates the simple-graph invariants (loops, ranges, size)."""


class PreconditionError(BrooksError, ValueError):
    """Input does not meet an operation's precondition."""


class DomainError(BrooksError, ValueError):
    """Input lies outside the theorem's hypothesis."""


class GallaiTreeError(DomainError):
    """The graph is a Gallai tree, so no witness cycle or degree orientation exists."""


class CapacityError(BrooksError):
    """Exhaustive enumeration bound exceeded."""

    def __init__(self, what: str, limit: int, actual: int):
        super().__init__(f"{what}: {actual} exceeds the capacity bound {limit}")
        self.what = what
        self.limit = limit
        self.actual = actual


class IllegalMoveError(BrooksError, ValueError):
    """Paint-game move that breaks the rules."""

    def __init__(self, message: str, paint_wins: bool = False):
        super().__init__(message)
        # True when the move fails only because a marked vertex has no eraser left
        self.paint_wins = paint_wins


class InvariantViolation(BrooksError, AssertionError):
    """Internal logic error: a constructed object failed its own invariants."""


class GraphFormatWarning(UserWarning):
    """Tolerated irregularity in an input file."""


def check_capacity(what: str, actual: int, limit: int):
    if actual > limit:
        raise CapacityError(what, limit, actual)
