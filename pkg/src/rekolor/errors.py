"""Exception types shared across the package."""

from __future__ import annotations


class RekolorError(Exception):
    """Base class for every error raised by rekolor."""


class InputError(RekolorError, ValueError):
    """Malformed or inconsistent input (sizes, ranges, improper colorings)."""


class ParseError(InputError):
    """A file could not be parsed."""


class PreconditionError(RekolorError, ValueError):
    """An engine precondition does not hold, typically too few colors."""


class ResourceError(RekolorError, RuntimeError):
    """An exact search or the oracle would exceed its configured guard."""


class SequenceError(RekolorError, ValueError):
    """A recoloring sequence is invalid at a given step."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


class InvariantError(RekolorError, AssertionError):
    """An internal invariant was violated. Always a bug, never user error."""
