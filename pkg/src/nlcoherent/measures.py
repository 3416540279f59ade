r"""Closed-form weight functions (Borel measures) for the five families.

Each measure solves the moment problem :math:`\int t^n \Omega(t)\,dt = \rho_n`
on its support. Densities are evaluated in the log domain: the Bessel-type
ones decay like :math:`e^{-c\sqrt t}` and, for the noncommutative oscillator,
carry prefactors such as :math:`1/\Gamma(1+\beta)` with
:math:`\beta = 1 + 2/\tau`.

The noncommutative measures are also available through their Mellin
factorisation: a unit Dirac factor at ``s`` composed multiplicatively with a
smooth factor :math:`D(x) = 2x^{(a+b)/2}K_{a-b}(2\sqrt x)`. Because the Dirac
factor collapses the convolution integral, the composition is a dilation,
:math:`\lambda(x) = D(x/s)/s` (see :func:`dilate`).
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError
from .families import FamilyId, FamilySpec
from .specfun import ln_gamma, log_bessel_k

__all__ = [
    "RightBehavior",
    "BesselForm",
    "SmoothFactor",
    "MellinFactorPair",
    "BorelMeasure",
    "measure_for",
    "mellin_factors",
    "dilate",
    "log_density",
    "support_grid",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class RightBehavior:
    """Decay of the density at the right end of the support.

    ``kind`` is ``"algebraic"`` (density ~ (1-t)^rate at t -> 1),
    ``"exp_sqrt"`` (~ exp(-rate sqrt t)) or ``"exponential"`` (~ exp(-rate t)).
    """

    kind: str
    rate: float


@dataclass(frozen=True)
class BesselForm:
    """Structure ``Omega(t) = C t^power K_order(arg_scale sqrt t)``.

    Used by the quadrature to substitute ``u = arg_scale * sqrt(t)``.
    """

    power: float
    order: float
    arg_scale: float


@dataclass(frozen=True)
class SmoothFactor:
    """Smooth Mellin factor ``D(x) = 2 x^((a+b)/2) K_(a-b)(2 sqrt x)``.

    Its moments are ``int x^n D(x) dx = Gamma(n+a+1) Gamma(n+b+1)``.
    """

    alpha_exp: float
    beta_exp: float

    @property
    def exponent(self) -> float:
        return 0.5 * (self.alpha_exp + self.beta_exp)

    @property
    def order(self) -> float:
        return abs(self.alpha_exp - self.beta_exp)

    def log_eval(self, x: float) -> float:
        if not x > 0.0:
            raise DomainError(f"smooth factor is defined for x > 0, got {x!r}")
        return _LN2 + self.exponent * math.log(x) + log_bessel_k(self.order, 2.0 * math.sqrt(x))

    def log_moment(self, n: float) -> float:
        return ln_gamma(n + self.alpha_exp + 1.0) + ln_gamma(n + self.beta_exp + 1.0)


@dataclass(frozen=True)
class MellinFactorPair:
    """Dirac factor at ``delta_point`` times ``smooth_factor``.

    ``log_normalizer`` is the log of the constant the composed density is
    divided by (``ln Gamma(1+beta)`` for the oscillator, ``2 ln Gamma(eta)``
    for Poschl-Teller).
    """

    delta_point: float
    smooth_factor: SmoothFactor
    log_normalizer: float = 0.0


@dataclass(frozen=True)
class BorelMeasure:
    """A positive density on ``support = (0, R)``.

    ``left_exponent`` is the exponent ``p`` of the explicit power prefactor
    ``t^p`` of the closed form; ``leading_exponent`` is the true small-``t``
    exponent once the Bessel factor's own ``t^(-order/2)`` blow-up is
    included. ``has_log_singularity`` flags a ``K_0`` factor.
    """

    support: tuple[float, float]
    family: FamilySpec | None
    left_exponent: float
    has_log_singularity: bool
    right_behavior: RightBehavior
    bessel: BesselForm | None = None
    log_scale: float = 0.0
    _log_density: Callable[[float, float | None], float] = field(
        default=None, repr=False, compare=False)

    @property
    def leading_exponent(self) -> float:
        if self.bessel is None or self.bessel.order == 0.0:
            return self.left_exponent
        return self.left_exponent - 0.5 * self.bessel.order

    def contains(self, t: float) -> bool:
        lo, hi = self.support
        return lo < t < hi

    def log_density(self, t: float, one_minus_t: float | None = None) -> float:
        """``ln Omega(t)``; ``one_minus_t`` may supply an exact ``1 - t``."""
        t = float(t)
        inside = (self.contains(t) if one_minus_t is None
                  else self.support[0] < t and one_minus_t > 0.0 and self.support[1] == 1.0)
        if not inside:
            raise DomainError(f"t = {t!r} outside the support {self.support}")
        return self._log_density(t, one_minus_t) + self.log_scale

    def density(self, t: float) -> float:
        """``Omega(t)``; underflows to 0 far in the tail."""
        return math.exp(self.log_density(t))

    def rescaled(self, log_factor: float) -> "BorelMeasure":
        """Same measure multiplied by ``exp(log_factor)``."""
        return replace(self, log_scale=self.log_scale + log_factor)


def _glauber() -> Callable[[float, float | None], float]:
    return lambda t, _c: -t


def _su11(j: float) -> Callable[[float, float | None], float]:
    q = 2.0 * j - 2.0
    log_c = math.log(2.0 * j - 1.0)

    def f(t: float, one_minus_t: float | None) -> float:
        if q == 0.0:
            return log_c
        if one_minus_t is not None:
            return log_c + q * math.log(one_minus_t)
        return log_c + q * math.log1p(-t)
    return f


def _barut_girardello(j: float) -> Callable[[float, float | None], float]:
    nu = 2.0 * j - 1.0
    log_c = _LN2 - ln_gamma(2.0 * j)

    def f(t: float, _c: float | None) -> float:
        return log_c + 0.5 * nu * math.log(t) + log_bessel_k(nu, 2.0 * math.sqrt(t))
    return f


def _nc_oscillator(tau: float, alpha: float, beta: float) -> Callable[[float, float | None], float]:
    # 2^((4+a+b)/2) / (tau Gamma(1+b)) (t/tau)^((a+b)/2) K_(a-b)(2 sqrt(2t/tau))
    half = 0.5 * (alpha + beta)
    log_c = 0.5 * (4.0 + alpha + beta) * _LN2 - math.log(tau) - ln_gamma(1.0 + beta)
    log_tau = math.log(tau)
    nu = alpha - beta

    def f(t: float, _c: float | None) -> float:
        return (log_c + half * (math.log(t) - log_tau)
                + log_bessel_k(nu, 2.0 * math.sqrt(2.0 * t / tau)))
    return f


def _nc_poschl_teller(tau: float, eta: float) -> Callable[[float, float | None], float]:
    # tau^(-eta) / Gamma(eta)^2 (t/2)^(eta-1) K_0(sqrt(2t/tau))
    log_c = -eta * math.log(tau) - 2.0 * ln_gamma(eta)

    def f(t: float, _c: float | None) -> float:
        return (log_c + (eta - 1.0) * (math.log(t) - _LN2)
                + log_bessel_k(0.0, math.sqrt(2.0 * t / tau)))
    return f


def measure_for(family: FamilySpec) -> BorelMeasure:
    """Closed-form weight function of ``family``.

    Supports are ``(0, 1)`` for SU(1,1) and ``(0, inf)`` otherwise.
    """
    fid = family.id
    inf = math.inf
    if fid is FamilyId.GLAUBER:
        return BorelMeasure((0.0, inf), family, 0.0, False,
                            RightBehavior("exponential", 1.0), None, 0.0, _glauber())
    if fid is FamilyId.SU11:
        j = family.param("j")
        return BorelMeasure((0.0, 1.0), family, 0.0, False,
                            RightBehavior("algebraic", 2.0 * j - 2.0), None, 0.0, _su11(j))
    if fid is FamilyId.BARUT_GIRARDELLO:
        j = family.param("j")
        nu = 2.0 * j - 1.0
        return BorelMeasure((0.0, inf), family, 0.5 * nu, nu == 0.0,
                            RightBehavior("exp_sqrt", 2.0), BesselForm(0.5 * nu, nu, 2.0),
                            0.0, _barut_girardello(j))
    if fid is FamilyId.NC_OSCILLATOR:
        tau = family.param("tau")
        alpha, beta = family.alpha_exp, family.beta_exp
        nu = abs(alpha - beta)
        scale = 2.0 * math.sqrt(2.0 / tau)
        return BorelMeasure((0.0, inf), family, 0.5 * (alpha + beta), nu == 0.0,
                            RightBehavior("exp_sqrt", scale),
                            BesselForm(0.5 * (alpha + beta), nu, scale),
                            0.0, _nc_oscillator(tau, alpha, beta))
    tau = family.param("tau")
    eta = family.eta
    scale = math.sqrt(2.0 / tau)
    return BorelMeasure((0.0, inf), family, eta - 1.0, True,
                        RightBehavior("exp_sqrt", scale), BesselForm(eta - 1.0, 0.0, scale),
                        0.0, _nc_poschl_teller(tau, eta))


def log_density(measure: BorelMeasure, t: float) -> float:
    """``ln Omega(t)`` for ``t`` strictly inside the support."""
    return measure.log_density(t)


def mellin_factors(family: FamilySpec) -> MellinFactorPair:
    """Dirac/smooth factorisation of a noncommutative-model moment sequence.

    Oscillator: ``rho_n = (tau/2)^n Gamma(n+1) Gamma(n+beta+1) / Gamma(1+beta)``.
    Poschl-Teller: ``rho_n = (2 tau)^n Gamma(n+eta)^2 / Gamma(eta)^2``.
    """
    if family.id is FamilyId.NC_OSCILLATOR:
        tau = family.param("tau")
        return MellinFactorPair(tau / 2.0, SmoothFactor(family.alpha_exp, family.beta_exp),
                                ln_gamma(1.0 + family.beta_exp))
    if family.id is FamilyId.NC_POSCHL_TELLER:
        tau = family.param("tau")
        eta = family.eta
        return MellinFactorPair(2.0 * tau, SmoothFactor(eta - 1.0, eta - 1.0),
                                2.0 * ln_gamma(eta))
    raise DomainError(f"family {family.id.value} has no Dirac/smooth Mellin factorisation")


def dilate(smooth_factor: SmoothFactor, delta_point: float) -> BorelMeasure:
    """Compose a unit Dirac factor at ``delta_point`` with ``smooth_factor``.

    ``lambda(x) = int delta(u - s) D(x/u) du/u = D(x/s) / s``, so the n-th
    moment is ``s^n`` times the n-th moment of ``D``. The result is not
    normalised; divide by the family constant with :meth:`BorelMeasure.rescaled`.
    """
    s = float(delta_point)
    if not (s > 0.0 and math.isfinite(s)):
        raise DomainError(f"delta point must be finite and > 0, got {delta_point!r}")
    log_s = math.log(s)
    order = smooth_factor.order

    def f(x: float, _c: float | None) -> float:
        return smooth_factor.log_eval(x / s) - log_s

    scale = 2.0 / math.sqrt(s)
    return BorelMeasure((0.0, math.inf), None, smooth_factor.exponent, order == 0.0,
                        RightBehavior("exp_sqrt", scale),
                        BesselForm(smooth_factor.exponent, order, scale), 0.0, f)


def _tail_end(measure: BorelMeasure, floor: float) -> float:
    """Smallest power of two (then bisected) where ln Omega drops to ``floor``."""
    hi = 1.0
    while measure.log_density(hi) > floor:
        hi *= 2.0
        if hi > 1e300:
            return hi
    lo = hi / 2.0
    if measure.log_density(lo) <= floor:
        lo = 1e-8
    for _ in range(60):
        mid = math.sqrt(lo * hi)
        if measure.log_density(mid) > floor:
            lo = mid
        else:
            hi = mid
    return lo


def support_grid(measure: BorelMeasure, size: int, floor: float = -700.0,
                 t_min: float = 1e-8) -> np.ndarray:
    """Log-spaced evaluation points across the support.

    On ``(0, inf)`` the grid runs from ``t_min`` to the point where
    ``ln Omega`` falls to ``floor``. On ``(0, 1)`` it is log-spaced towards
    both endpoints.
    """
    size = int(size)
    if size < 2:
        raise DomainError(f"grid size must be >= 2, got {size!r}")
    lo, hi = measure.support
    if math.isinf(hi):
        return np.geomspace(t_min, _tail_end(measure, floor), size)
    left = (size + 1) // 2
    right = size - left
    near0 = np.geomspace(t_min, 0.5, left)
    near1 = 1.0 - np.geomspace(0.5, t_min, right + 1)[1:]
    return np.concatenate([near0, near1])
