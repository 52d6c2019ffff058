"""Error and warning types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the region where a routine is defined."""


class DivergenceError(ArithmeticError):
    """A series or integral diverges for the requested parameters."""


class ConvergenceError(RuntimeError):
    """An iterative evaluation stopped before reaching its tolerance."""


class BlowUpError(RuntimeError):
    """A trajectory left the numerically meaningful region."""


class AccuracyWarning(UserWarning):
    """A result was returned, but its accuracy estimate exceeds the target."""


class TruncationWarning(UserWarning):
    """A finite basis is too small for the requested quantity."""
