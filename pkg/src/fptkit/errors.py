"""Exception types shared across the package."""

from __future__ import annotations


class FptkitError(Exception):
    """Base class for all package errors."""


class UsageError(FptkitError, ValueError):
    """Bad input: wrong ring, inhomogeneous generators, non-prime modulus, ..."""


class ResourceError(FptkitError, RuntimeError):
    """A step or enumeration budget was exhausted.

    ``partial`` carries whatever was computed before the abort, if anything.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class ParseError(UsageError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
