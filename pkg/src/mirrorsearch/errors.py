"""Exception types shared across the package."""

from __future__ import annotations


class MirrorSearchError(Exception):
    """Base class for all errors raised by this package."""


class WidthError(MirrorSearchError):
    """Register width is invalid or a value does not fit the declared width."""


class DimensionError(MirrorSearchError):
    """Operands live in registers of different widths."""


class NormalizationError(MirrorSearchError):
    """Amplitude vector is not unit-norm (or has the wrong length)."""


class DimacsError(MirrorSearchError):
    """Malformed CNF input.

    Carries the 1-based line number where parsing failed (None when the
    formula was built programmatically rather than parsed).
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class UniquenessError(MirrorSearchError):
    """Oracle does not have exactly one solution.

    The search procedures require a unique marked string; instances with zero
    or several solutions are refused rather than searched.
    """

    def __init__(self, message: str, num_solutions: int):
        super().__init__(message)
        self.num_solutions = num_solutions


class GeometryError(MirrorSearchError):
    """State lies outside the two-dimensional search plane; no angle is defined."""


class ScheduleError(MirrorSearchError):
    """Reflection schedule is malformed or references a state never stored."""
