"""Log-domain double-exponential quadrature for moment integrals.

Every integral is reduced to a trapezoidal sum over ``s = k h`` of
``exp(L(s))`` where ``L`` is the log of the transformed integrand times the
Jacobian. Two maps are used:

* tanh-sinh on a finite interval, whose doubly exponential clustering absorbs
  algebraic and logarithmic endpoint singularities;
* exp-sinh on ``(0, inf)``, centred on the integrand's bulk in log space and
  decaying doubly exponentially at both ends.

The step ``h`` is halved (reusing earlier nodes) until two successive levels
agree to the requested relative tolerance. Terms are combined with a
max-shifted ``math.fsum`` so values such as ``rho_20 ~ 1e40`` and tails near
``exp(-700)`` coexist without overflow.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Callable
from dataclasses import dataclass

from .errors import DomainError, QuadratureError, ToleranceError
from .measures import BorelMeasure

__all__ = [
    "Transform",
    "QuadResult",
    "Singularities",
    "integrate_density",
    "integrate_moment",
    "MIN_TOL",
    "MAX_TOL",
]

MIN_TOL = 1e-13
MAX_TOL = 1e-3

_EPS = 2.220446049250313e-16
_HALF_PI = 0.5 * math.pi
_LOG_NEGLIGIBLE = -50.0  # relative to the largest term seen
_S_MAX = 7.0
_H0 = 0.5
_MIN_LEVELS = 3
_MAX_LEVELS = 10


class Transform(str, enum.Enum):
    BETA_ENDPOINT = "beta_endpoint"
    SQRT_BESSEL = "sqrt_bessel"
    PLAIN = "plain"


@dataclass(frozen=True)
class QuadResult:
    """Outcome of one integration.

    ``log_value`` is the log of the integral; ``rel_error_estimate`` bounds
    the relative error of ``exp(log_value)``.
    """

    log_value: float
    rel_error_estimate: float
    evaluations: int
    transform_used: Transform

    @property
    def value(self) -> float:
        return math.exp(self.log_value)


@dataclass(frozen=True)
class Singularities:
    """Hints for :func:`integrate_density`.

    ``left_exponent`` is the small-``t`` exponent of the integrand (must be
    > -1), ``log_singular`` marks an extra log factor, ``center`` and
    ``width`` locate the integrand's bulk in ``ln t`` on semi-infinite
    supports.
    """

    left_exponent: float = 0.0
    log_singular: bool = False
    center: float = 1.0
    width: float = 1.0


def _softplus(z: float) -> float:
    if z > 0.0:
        return z + math.log1p(math.exp(-z))
    return math.log1p(math.exp(z))


def _check_tol(tol: float) -> float:
    tol = float(tol)
    if not tol >= MIN_TOL:
        raise ToleranceError(f"target relative tolerance {tol!r} is below the feasible {MIN_TOL}")
    if not tol <= MAX_TOL:
        raise ToleranceError(f"target relative tolerance {tol!r} exceeds {MAX_TOL}")
    return tol


def _log_sum(values: list[float]) -> float:
    peak = max(values)
    if peak == -math.inf:
        return -math.inf
    return peak + math.log(math.fsum(math.exp(v - peak) for v in values if v > -math.inf))


def _de_sum(log_term: Callable[[float], float], tol: float, transform: Transform,
            floor_scale: float = 1.0) -> QuadResult:
    """Trapezoidal sum of ``exp(log_term(s))`` over the real line with step halving."""
    terms: list[float] = []
    peak = -math.inf
    evaluations = 0

    def walk(start: int, stride: int, h: float) -> None:
        nonlocal peak, evaluations
        k = start
        previous = -math.inf  # never stop on the first node: it may precede the bulk
        while True:
            s = k * h
            if abs(s) > _S_MAX:
                return
            value = log_term(s)
            evaluations += 1
            if math.isnan(value):
                raise DomainError(f"integrand returned NaN at s={s!r}")
            terms.append(value)
            if value > peak:
                peak = value
            if value < peak + _LOG_NEGLIGIBLE and value <= previous:
                return
            previous = value
            k += stride

    h = _H0
    walk(0, 1, h)
    walk(-1, -1, h)
    log_prev = _log_sum(terms) + math.log(h)
    estimate = math.inf
    for level in range(1, _MAX_LEVELS + 1):
        h *= 0.5
        walk(1, 2, h)
        walk(-1, -2, h)
        log_now = _log_sum(terms) + math.log(h)
        if log_now == -math.inf:
            raise QuadratureError("integrand vanishes on every node", log_now, math.inf,
                                  evaluations, transform.value)
        estimate = abs(math.expm1(log_now - log_prev))
        log_prev = log_now
        floor = 16.0 * _EPS * (1.0 + floor_scale + abs(log_now))
        if level >= _MIN_LEVELS - 1 and estimate <= max(tol, floor):
            return QuadResult(log_now, max(estimate, floor), evaluations, transform)
    raise QuadratureError(
        f"no convergence to rel. tol {tol:g} after {_MAX_LEVELS} halvings "
        f"(last change {estimate:.3g})", log_prev, estimate, evaluations, transform.value)


def _exp_sinh(log_f: Callable[[float, float], float], log_center: float,
              width: float) -> Callable[[float], float]:
    """Map s -> v = exp(log_center + width * pi/2 sinh s); log_f(v, ln v)."""
    scale = width * _HALF_PI

    def term(s: float) -> float:
        log_v = log_center + scale * math.sinh(s)
        if log_v > 709.0 or log_v < -745.0:
            return -math.inf
        v = math.exp(log_v)
        if v == 0.0:
            return -math.inf
        return log_f(v, log_v) + log_v + math.log(scale * math.cosh(s))
    return term


def _tanh_sinh(log_f: Callable[[float, float, float], float]) -> Callable[[float], float]:
    """Map s -> x in (0, 1); log_f(x, ln x, 1 - x)."""

    def term(s: float) -> float:
        sigma = _HALF_PI * math.sinh(s)
        log_x = -_softplus(-2.0 * sigma)
        log_1mx = -_softplus(2.0 * sigma)
        x = math.exp(log_x)
        one_minus_x = math.exp(log_1mx)
        if x == 0.0 or one_minus_x == 0.0:
            return -math.inf
        return log_f(x, log_x, one_minus_x) + log_x + log_1mx + math.log(math.pi * math.cosh(s))
    return term


def integrate_density(log_integrand: Callable[[float], float],
                      support: tuple[float, float],
                      singularities: Singularities | None = None,
                      target_rel_tol: float = 1e-10) -> QuadResult:
    """Integrate ``exp(log_integrand(t))`` over ``support``.

    ``support`` is a finite interval ``(a, b)`` (tanh-sinh) or ``(a, inf)``
    (exp-sinh on ``t - a``, centred at ``singularities.center``).

    Raises
    ------
    ToleranceError
        ``target_rel_tol`` outside ``[1e-13, 1e-3]``.
    QuadratureError
        No convergence; carries the best estimate.
    DomainError
        Malformed support or a non-integrable left exponent.
    """
    tol = _check_tol(target_rel_tol)
    sing = singularities or Singularities()
    if not sing.left_exponent > -1.0:
        raise DomainError(f"left exponent {sing.left_exponent!r} is not integrable (need > -1)")
    a, b = float(support[0]), float(support[1])
    if not (math.isfinite(a) and a < b):
        raise DomainError(f"support must be (a, b) with finite a < b, got {support!r}")
    if math.isinf(b):
        def shifted(v: float, _log_v: float) -> float:
            return log_integrand(a + v)
        term = _exp_sinh(shifted, math.log(sing.center), sing.width)
    else:
        length = b - a
        log_length = math.log(length)

        def mapped(x: float, _log_x: float, _one_minus_x: float) -> float:
            t = a + length * x
            if not a < t < b:
                # node rounded onto an endpoint; its DE weight is below eps
                return -math.inf
            return log_integrand(t) + log_length
        term = _tanh_sinh(mapped)
    return _de_sum(term, tol, Transform.PLAIN)


def _mellin_bulk(measure: BorelMeasure, n: int) -> tuple[float, float]:
    """Shape parameters (A, B) of the moment integrand of a Bessel-type measure.

    For ``t^(n+p) K_nu(c sqrt t)``, ``u^2/4`` with ``u = c sqrt t`` is
    distributed like a product of Gamma(A) and Gamma(B) variables, which
    locates the bulk: ``ln(u^2/4) ~ ln A + ln B`` with spread
    ``sqrt(1/A + 1/B)``.
    """
    form = measure.bessel
    base = n + form.power + 1.0
    return base + 0.5 * form.order, base - 0.5 * form.order


def _width(sigma: float) -> float:
    return min(1.0, max(0.1, 3.0 * sigma))


def _default_transform(measure: BorelMeasure) -> Transform:
    if math.isfinite(measure.support[1]):
        return Transform.BETA_ENDPOINT
    if measure.bessel is not None:
        return Transform.SQRT_BESSEL
    return Transform.PLAIN


def integrate_moment(measure: BorelMeasure, n: int, target_rel_tol: float = 1e-10,
                     transform: Transform | str | None = None) -> QuadResult:
    """``ln int t^n Omega(t) dt`` over the measure's support.

    The substitution is chosen from the measure metadata unless
    ``transform`` overrides it:

    ``beta_endpoint``
        finite support with ``(1-t)^q`` right behaviour; ``w = (1-t)^(q+1)``
        absorbs the algebraic weight.
    ``sqrt_bessel``
        ``u = c sqrt(t)`` for densities ``t^p K_nu(c sqrt t)``, centred on
        the bulk of ``u^(2n+2p+1) K_nu(u)``.
    ``plain``
        exp-sinh directly in ``t`` (or tanh-sinh on a finite support).
    """
    if int(n) != n or n < 0:
        raise DomainError(f"moment order must be an integer >= 0, got {n!r}")
    n = int(n)
    tol = _check_tol(target_rel_tol)
    chosen = Transform(transform) if transform is not None else _default_transform(measure)
    lo, hi = measure.support
    finite = math.isfinite(hi)

    if chosen is Transform.BETA_ENDPOINT:
        if not finite or measure.right_behavior.kind != "algebraic":
            raise DomainError("beta_endpoint needs a finite support with algebraic right behaviour")
        q = measure.right_behavior.rate
        inv = 1.0 / (q + 1.0)
        log_q1 = math.log(q + 1.0)

        def log_f_beta(w: float, log_w: float, _one_minus_w: float) -> float:
            one_minus_t = math.exp(inv * log_w)
            t = -math.expm1(inv * log_w)
            if t <= 0.0 or one_minus_t == 0.0:
                return -math.inf
            log_t = math.log1p(-one_minus_t) if one_minus_t < 0.5 else math.log(t)
            return (n * log_t + measure.log_density(t, one_minus_t)
                    - log_q1 - q * inv * log_w)
        return _de_sum(_tanh_sinh(log_f_beta), tol, chosen)

    if chosen is Transform.SQRT_BESSEL:
        if measure.bessel is None:
            raise DomainError("sqrt_bessel needs a Bessel-type measure")
        c = measure.bessel.arg_scale
        log_c = math.log(c)
        big_a, big_b = _mellin_bulk(measure, n)
        log_center = math.log(2.0) + 0.5 * (math.log(big_a) + math.log(big_b))
        width = _width(0.5 * math.sqrt(1.0 / big_a + 1.0 / big_b))

        def log_f_sqrt(u: float, log_u: float) -> float:
            log_t = 2.0 * (log_u - log_c)
            t = math.exp(log_t)
            if t == 0.0 or math.isinf(t):
                return -math.inf
            return n * log_t + measure.log_density(t) + math.log(2.0) + log_u - 2.0 * log_c
        return _de_sum(_exp_sinh(log_f_sqrt, log_center, width), tol, chosen)

    if finite:
        unit = lo == 0.0 and hi == 1.0

        def log_f_plain_finite(x: float, log_x: float, one_minus_x: float) -> float:
            if unit:
                return n * log_x + measure.log_density(x, one_minus_x)
            t = lo + (hi - lo) * x
            if not lo < t < hi:
                return -math.inf
            return n * math.log(t) + measure.log_density(t) + math.log(hi - lo)
        return _de_sum(_tanh_sinh(log_f_plain_finite), tol, chosen)

    if measure.bessel is not None:
        big_a, big_b = _mellin_bulk(measure, n)
        c = measure.bessel.arg_scale
        log_center = math.log(4.0 * big_a * big_b) - 2.0 * math.log(c)
        width = _width(math.sqrt(1.0 / big_a + 1.0 / big_b))
    else:
        # e^{-r t}: t^(n+p+1) e^{-r t} peaks at (n+p+1)/r in ln t
        shape = n + measure.leading_exponent + 1.0
        log_center = math.log(shape / measure.right_behavior.rate)
        width = _width(math.sqrt(1.0 / shape))

    def log_f_plain(t: float, log_t: float) -> float:
        return n * log_t + measure.log_density(t)
    return _de_sum(_exp_sinh(log_f_plain, log_center, width), tol, chosen)
