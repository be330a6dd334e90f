"""Exception types shared across the toolkit.

Every validation failure raises one of these so callers (CLI, HTTP service)
can map failures to exit codes and API error codes without string matching.
"""

from __future__ import annotations


class EncsLabError(Exception):
    """Base class for all toolkit errors."""

    code = "error"


class InvalidInputError(EncsLabError, ValueError):
    """An argument violates a documented precondition or type invariant."""

    code = "invalid_input"


class SimplexViolationError(InvalidInputError):
    """A usage distribution is out of range or its mass is off by more than
    the configured tolerance."""

    code = "simplex_violation"


class DegenerateDataError(InvalidInputError):
    """Data admits no meaningful answer: constant regressor, constant series
    for a correlation, or a prediction clamped to all zeros."""

    code = "degenerate_data"


class NeverBreaksEvenError(EncsLabError):
    """Per-message savings do not exceed per-message maintenance, so no
    message volume recovers the build cost.

    This is a typed outcome, not an abort: scenario evaluation catches it and
    renders the affected row as never breaking even.
    """

    code = "never_breaks_even"

    def __init__(self, message: str, *, encs_per_message: float | None = None,
                 c_m: float | None = None):
        super().__init__(message)
        self.encs_per_message = encs_per_message
        self.c_m = c_m
