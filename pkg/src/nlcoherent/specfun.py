r"""Real special functions: log-gamma and the modified Bessel function K_nu.

Everything here is written from scratch on top of :mod:`math` so the
moment checks downstream do not silently inherit the error behaviour of a
third-party kernel.

``ln_gamma`` uses the Taylor series of :math:`\ln\Gamma(2+z)` around the two
zeros of the function (so the relative error stays small near
:math:`x = 1, 2`) and the Stirling series for large arguments.

``bessel_k`` follows the classical Temme / Steed construction:

* :math:`x \le 2`: Temme's series for :math:`K_\mu, K_{\mu+1}` with
  :math:`|\mu| \le 1/2`,
* :math:`x > 2`: Steed's continued fraction (CF2) for the exponentially
  scaled pair,

followed by forward recurrence in the order, which is stable for K. The
recurrence is renormalised on the fly, so :func:`log_bessel_k` is usable far
outside the range where :math:`K_\nu(x)` is representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import BesselOverflowError, DomainError

__all__ = [
    "BesselEval",
    "EULER_GAMMA",
    "ln_gamma",
    "bessel_k",
    "log_bessel_k",
    "log_bessel_k_scaled",
]

EULER_GAMMA = 0.57721566490153286060651209008240243
_EPS = 2.220446049250313e-16
_HALF_LOG_2PI = 0.91893853320467274178032973640561764
_MAX_ZETA = 64
_CF_MAXIT = 100_000
_RESCALE = 1e250
_LOG_RESCALE = math.log(_RESCALE)

# Bernoulli numbers B_2, B_4, ..., B_20.
_BERNOULLI = (
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0,
)


def _zeta_minus_one(k: int, cutoff: int = 16) -> float:
    """zeta(k) - 1 for integer k >= 2 by Euler-Maclaurin summation."""
    head = [m ** -float(k) for m in range(2, cutoff)]
    m = float(cutoff)
    tail = [m ** (1.0 - k) / (k - 1), 0.5 * m ** -float(k)]
    rising = float(k)  # k (k+1) ... (k+2i-2)
    factorial = 2.0     # (2i)!
    for i, b2i in enumerate(_BERNOULLI[:7], start=1):
        tail.append(b2i / factorial * rising * m ** (-k - 2 * i + 1))
        rising *= (k + 2 * i - 1) * (k + 2 * i)
        factorial *= (2 * i + 1) * (2 * i + 2)
    return math.fsum(head + tail)


# c_k = (zeta(k) - 1) / k; coefficients of ln Gamma(2 + z) around z = 0.
_LG2_COEF = tuple(_zeta_minus_one(k) / k for k in range(2, _MAX_ZETA + 1))


def _ln_gamma_2pz(z: float) -> float:
    """ln Gamma(2 + z) for |z| <= 1/2 (series converges for |z| < 2)."""
    total = 0.0
    power = -z  # (-1)^k z^k after the first update
    for ck in _LG2_COEF:
        power *= -z
        term = ck * power
        total += term
        if abs(term) < 1e-18 * abs(total) or term == 0.0:
            break
    return (1.0 - EULER_GAMMA) * z + total


def _stirling(x: float) -> float:
    inv = 1.0 / x
    inv2 = inv * inv
    corr = 0.0
    power = inv
    for k, b2k in enumerate(_BERNOULLI[:8], start=1):
        corr += b2k / (2 * k * (2 * k - 1)) * power
        power *= inv2
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + corr


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for real ``x > 0``.

    Parameters
    ----------
    x : float
        Positive, finite argument.

    Returns
    -------
    float
        :math:`\\ln\\Gamma(x)`, relative error a few ulp on (0, 1e6) including
        the neighbourhoods of the zeros at 1 and 2.

    Raises
    ------
    DomainError
        If ``x`` is not finite or ``x <= 0``.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"ln_gamma requires finite x > 0, got {x!r}")
    if x < 0.5:
        # ln G(x) = ln G(2 + x) - log1p(x) - ln x
        return _ln_gamma_2pz(x) - math.log1p(x) - math.log(x)
    if x < 1.5:
        z = x - 1.0
        return _ln_gamma_2pz(z) - math.log1p(z)
    if x <= 2.5:
        return _ln_gamma_2pz(x - 2.0)
    if x < 12.0:
        shift = int(x - 1.5)
        base = x - shift
        prod = 1.0
        for i in range(shift):
            prod *= base + i
        return _ln_gamma_2pz(base - 2.0) + math.log(prod)
    return _stirling(x)


# ---------------------------------------------------------------------------
# Modified Bessel function of the second kind
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BesselEval:
    """Result of :func:`bessel_k`.

    ``value`` is :math:`K_\\nu(x)` or, when ``scaled`` is true,
    :math:`e^x K_\\nu(x)`.
    """

    value: float
    scaled: bool
    abs_error_estimate: float


@lru_cache(maxsize=256)
def _temme_gammas(mu: float) -> tuple[float, float, float, float]:
    """gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu) for |mu| <= 1/2.

    gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2.
    Built from the even/odd split of ln G(1+mu) so that gam1 has no
    cancellation as mu -> 0.
    """
    odd_series = 0.0  # sum over odd k of c_k mu^(k-1)
    even_series = 0.0  # sum over even k of c_k mu^k
    mu2 = mu * mu
    power = 1.0  # mu^k for even k, mu^(k-1) for odd k
    for k, ck in enumerate(_LG2_COEF, start=2):
        if k % 2 == 0:
            power *= mu2
            term = ck * power
            even_series += term
        else:
            term = ck * power
            odd_series += term
        if abs(term) < 1e-18:
            break
    if abs(mu) < 1e-4:
        atanh_over_mu = 1.0 + mu2 / 3.0 + mu2 * mu2 / 5.0
    else:
        atanh_over_mu = math.atanh(mu) / mu
    odd_over_mu = (1.0 - EULER_GAMMA) - odd_series - atanh_over_mu
    odd = odd_over_mu * mu
    even = even_series - 0.5 * math.log1p(-mu2)
    sinhc = 1.0 if odd == 0.0 else math.sinh(odd) / odd
    scale = math.exp(-even)
    gam1 = scale * sinhc * odd_over_mu
    gam2 = scale * math.cosh(odd)
    gampl = math.exp(-even - odd)
    gammi = math.exp(-even + odd)
    return gam1, gam2, gampl, gammi


def _temme_pair(mu: float, x: float) -> tuple[float, float, int]:
    """Unscaled (K_mu(x), K_{mu+1}(x)) for |mu| <= 1/2, 0 < x <= 2."""
    x2 = 0.5 * x
    pimu = math.pi * mu
    fact = 1.0 if abs(pimu) < _EPS else pimu / math.sin(pimu)
    d = -math.log(x2)
    e = mu * d
    fact2 = 1.0 if abs(e) < _EPS else math.sinh(e) / e
    gam1, gam2, gampl, gammi = _temme_gammas(mu)
    ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
    total = ff
    e = math.exp(e)
    p = 0.5 * e / gampl
    q = 0.5 / (e * gammi)
    c = 1.0
    d = x2 * x2
    total1 = p
    mu2 = mu * mu
    i = 0
    while True:
        i += 1
        ff = (i * ff + p + q) / (i * i - mu2)
        c *= d / i
        p /= i - mu
        q /= i + mu
        delta = c * ff
        total += delta
        total1 += c * (p - i * ff)
        if abs(delta) < abs(total) * _EPS or i > 500:
            break
    return total, total1 * (2.0 / x), i


def _steed_pair(mu: float, x: float) -> tuple[float, float, int]:
    """Scaled (e^x K_mu(x), e^x K_{mu+1}(x)) for |mu| <= 1/2, x > 2 (CF2)."""
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25 - mu * mu
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    i = 1
    while True:
        i += 1
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS or i > _CF_MAXIT:
            break
    h = a1 * h
    kmu = math.sqrt(math.pi / (2.0 * x)) / s
    kmu1 = kmu * (mu + x + 0.5 - h) / x
    return kmu, kmu1, i


def _bessel_k_core(nu: float, x: float) -> tuple[float, float, int]:
    """K_nu(x) = mantissa * exp(log_scale); returns (mantissa, log_scale, work)."""
    if not math.isfinite(nu):
        raise DomainError(f"Bessel order must be finite, got {nu!r}")
    if not (math.isfinite(x) and x > 0.0):
        raise DomainError(f"bessel_k requires finite x > 0, got {x!r}")
    nu = abs(nu)
    nl = int(nu + 0.5)
    mu = nu - nl
    if x <= 2.0:
        kmu, kmu1, work = _temme_pair(mu, x)
        log_scale = 0.0
    else:
        kmu, kmu1, work = _steed_pair(mu, x)
        log_scale = -x
    two_over_x = 2.0 / x
    for i in range(1, nl + 1):
        knext = (mu + i) * two_over_x * kmu1 + kmu
        kmu, kmu1 = kmu1, knext
        if kmu1 > _RESCALE:
            kmu /= _RESCALE
            kmu1 /= _RESCALE
            log_scale += _LOG_RESCALE
    return kmu, log_scale, work + nl


def log_bessel_k(nu: float, x: float) -> float:
    """``ln K_nu(x)``; finite for every finite ``nu`` and ``x > 0``."""
    mant, log_scale, _ = _bessel_k_core(nu, x)
    return math.log(mant) + log_scale


def log_bessel_k_scaled(nu: float, x: float) -> float:
    """``ln(e^x K_nu(x))``, avoiding the cancellation of adding ``x`` back."""
    mant, log_scale, _ = _bessel_k_core(nu, x)
    if x > 2.0:
        return math.log(mant) + (log_scale + x)
    return math.log(mant) + log_scale + x


def bessel_k(nu: float, x: float, scaled: bool = False) -> BesselEval:
    """Modified Bessel function of the second kind for real order.

    Parameters
    ----------
    nu : float
        Real order; ``K_{-nu} = K_nu`` so the sign is ignored.
    x : float
        Positive argument.
    scaled : bool
        Return ``exp(x) * K_nu(x)`` instead of ``K_nu(x)``.

    Returns
    -------
    BesselEval

    Raises
    ------
    DomainError
        ``x <= 0`` or non-finite input.
    BesselOverflowError
        The requested value overflows (small ``x``, large ``nu``) or the
        unscaled value underflows to zero (``x`` beyond ~745).
    """
    mant, log_scale, work = _bessel_k_core(nu, x)
    if scaled:
        log_scale += x
    try:
        value = mant * math.exp(log_scale)
    except OverflowError:
        value = math.inf
    if not math.isfinite(value):
        raise BesselOverflowError(
            f"K_{nu}({x}) overflows double precision; use log_bessel_k")
    if value == 0.0:
        raise BesselOverflowError(
            f"K_{nu}({x}) underflows to zero; use scaled=True or log_bessel_k")
    err = value * _EPS * (8.0 + 2.0 * work)
    return BesselEval(value=value, scaled=scaled, abs_error_estimate=err)
