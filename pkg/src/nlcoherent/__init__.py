"""Nonlinear coherent states and numerical checks of their completeness.

The public surface re-exports the main entry points of each module::

    from nlcoherent import make_family, measure_for, verify_moments
    fam = make_family("nc-oscillator", {"tau": 0.1})
    verify_moments(fam, n_max=20, tolerance=1e-8).passed
"""

from .errors import (
    BesselOverflowError,
    DivergenceError,
    DomainError,
    FamilyMismatchError,
    NLCoherentError,
    ParameterError,
    QuadratureError,
    ToleranceError,
)
from .families import (
    FamilyId,
    FamilySpec,
    MomentSequence,
    eigenvalue,
    log_normalization,
    log_rho,
    log_rho_n,
    make_family,
    normalization,
    radius_of_convergence,
)
from .measures import (
    BorelMeasure,
    MellinFactorPair,
    SmoothFactor,
    dilate,
    log_density,
    measure_for,
    mellin_factors,
    support_grid,
)
from .quadrature import QuadResult, Singularities, Transform, integrate_density, integrate_moment
from .specfun import BesselEval, bessel_k, ln_gamma, log_bessel_k
from .states import CoherentState, build_state, overlap
from .verify import PositivityResult, VerificationReport, verify_moments, verify_positivity

__version__ = "0.1.0"

__all__ = [
    "BesselEval", "BesselOverflowError", "BorelMeasure", "CoherentState", "DivergenceError",
    "DomainError", "FamilyId", "FamilyMismatchError", "FamilySpec", "MellinFactorPair",
    "MomentSequence", "NLCoherentError", "ParameterError", "PositivityResult", "QuadResult",
    "QuadratureError", "Singularities", "SmoothFactor", "ToleranceError", "Transform",
    "VerificationReport", "bessel_k", "build_state", "dilate", "eigenvalue",
    "integrate_density", "integrate_moment", "ln_gamma", "log_bessel_k", "log_density",
    "log_normalization", "log_rho", "log_rho_n", "make_family", "measure_for",
    "mellin_factors", "normalization", "overlap", "radius_of_convergence", "support_grid",
    "verify_moments", "verify_positivity",
]
