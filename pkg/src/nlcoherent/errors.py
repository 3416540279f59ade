"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations

__all__ = [
    "NLCoherentError",
    "DomainError",
    "ParameterError",
    "DivergenceError",
    "BesselOverflowError",
    "ToleranceError",
    "QuadratureError",
    "FamilyMismatchError",
]


class NLCoherentError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(NLCoherentError, ValueError):
    """An argument lies outside the mathematical domain of a function."""


class ParameterError(NLCoherentError, ValueError):
    """A family parameter violates one of its constraints.

    The ``constraint`` attribute holds a short human readable statement of
    the violated requirement, e.g. ``"2j > 1"``.
    """

    def __init__(self, message: str, constraint: str | None = None):
        super().__init__(message)
        self.constraint = constraint


class DivergenceError(NLCoherentError, ValueError):
    """|alpha|^2 lies outside the disc of convergence of the normalization series."""


class BesselOverflowError(NLCoherentError, OverflowError):
    """Unscaled K_nu(x) is not representable as a double; use the scaled or log variant."""


class ToleranceError(NLCoherentError, ValueError):
    """Requested tolerance is outside the range the integrator can honour."""


class QuadratureError(NLCoherentError, RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance.

    Attributes
    ----------
    log_estimate : float
        Best available estimate of the log of the integral.
    rel_error_estimate : float
        Relative error bound attached to ``log_estimate``.
    evaluations : int
        Integrand evaluations spent before giving up.
    """

    def __init__(self, message: str, log_estimate: float, rel_error_estimate: float,
                 evaluations: int = 0, transform_used: str = "plain"):
        super().__init__(message)
        self.log_estimate = log_estimate
        self.rel_error_estimate = rel_error_estimate
        self.evaluations = evaluations
        self.transform_used = transform_used


class FamilyMismatchError(NLCoherentError, ValueError):
    """Two objects that must share a family (and parameters) do not."""
