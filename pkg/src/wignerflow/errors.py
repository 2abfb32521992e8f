"""Exception types shared across the package."""

from __future__ import annotations


class WignerFlowError(Exception):
    """Base class for all package-specific errors."""


class ConvergenceError(WignerFlowError):
    """A quadrature or iteration failed to reach its tolerance.

    Carries the best estimate obtained so far in ``best_estimate`` so callers
    can decide whether to accept a degraded result.
    """

    def __init__(self, message, best_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate


class SeriesConvergenceError(ConvergenceError):
    """The quantum-correction series never produced a decreasing term."""

    def __init__(self, message, best_estimate=None, k_used=0, last_term=float("nan")):
        super().__init__(message, best_estimate)
        self.k_used = k_used
        self.last_term = last_term


class SingularityError(WignerFlowError):
    """Evaluation requested at a pole of the expression."""


class NearZeroDensityError(WignerFlowError):
    """Quantity undefined where the Wigner function vanishes (w = J/W)."""


class PositivityError(WignerFlowError):
    """An entropy-type functional met a non-positive Wigner value."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class IntegrationFailureError(WignerFlowError):
    """Weyl-transform integral left an imaginary residue above tolerance."""
