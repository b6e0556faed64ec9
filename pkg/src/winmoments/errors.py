"""Exception types shared across the package."""

from __future__ import annotations


class WinMomentsError(Exception):
    """Base class for all errors raised by this package."""


class InputError(WinMomentsError):
    """Malformed or inconsistent user input: bad file, bad value, bad field."""


class ShapeError(InputError):
    """Dimensions of two inputs do not line up."""


class MatrixInvalidError(InputError):
    """Outcome matrix violates the skew or value-domain contract."""

    def __init__(self, i: int, j: int, message: str):
        super().__init__(message)
        self.i = i
        self.j = j


class DegenerateDesignError(InputError):
    """One trial arm is empty, so no cross-arm comparison exists."""


class GuardError(WinMomentsError):
    """Requested enumeration exceeds the configured size guard."""


class RatioUndefinedError(WinMomentsError):
    """Win ratio is undefined because one arm has zero observed wins."""
