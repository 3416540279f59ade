"""The five coherent-state families and their moment sequences.

A family is fixed by its spectrum ``e_n`` (in units of hbar*omega, with the
ground state shifted to zero) and the moments ``rho_n = e_1 e_2 ... e_n``.
Moments are always handled as logarithms: for the noncommutative oscillator
with small ``tau`` they leave double range after a few dozen terms.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Mapping
from dataclasses import dataclass, field

from .errors import DivergenceError, DomainError, ParameterError
from .specfun import ln_gamma

__all__ = [
    "FamilyId",
    "FamilySpec",
    "MomentSequence",
    "make_family",
    "eigenvalue",
    "log_rho",
    "log_rho_n",
    "radius_of_convergence",
    "normalization",
    "log_normalization",
    "normalization_terms",
    "REQUIRED_PARAMS",
]

# tail bound of the normalization series relative to the partial sum
_SERIES_RTOL = 1e-16
_SERIES_MAX_TERMS = 20_000_000


class FamilyId(str, enum.Enum):
    GLAUBER = "glauber"
    SU11 = "su11"
    BARUT_GIRARDELLO = "barut-girardello"
    NC_OSCILLATOR = "nc-oscillator"
    NC_POSCHL_TELLER = "nc-poschl-teller"

    @classmethod
    def parse(cls, value: "FamilyId | str") -> "FamilyId":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {
            "su(1,1)": "su11", "su-1-1": "su11",
            "bg": "barut-girardello", "barutgirardello": "barut-girardello",
            "ncoscillator": "nc-oscillator", "ncho": "nc-oscillator",
            "ncposchlteller": "nc-poschl-teller", "nc-pt": "nc-poschl-teller",
            "pt": "nc-poschl-teller",
        }
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise ParameterError(f"unknown family {value!r}; expected one of {names}",
                                 constraint="family in catalog") from None


REQUIRED_PARAMS: dict[FamilyId, tuple[str, ...]] = {
    FamilyId.GLAUBER: (),
    FamilyId.SU11: ("j",),
    FamilyId.BARUT_GIRARDELLO: ("j",),
    FamilyId.NC_OSCILLATOR: ("tau",),
    FamilyId.NC_POSCHL_TELLER: ("tau", "gamma", "epsilon"),
}


@dataclass(frozen=True)
class FamilySpec:
    """A validated coherent-state family.

    ``params`` holds the user-facing parameters; the remaining fields are
    derived. ``alpha_exp``/``beta_exp`` are the exponents of the
    noncommutative oscillator moment formula (not the state label alpha);
    ``a``, ``b``, ``eta`` belong to the Poschl-Teller model.
    """

    id: FamilyId
    params: tuple[tuple[str, float], ...]
    alpha_exp: float | None = None
    beta_exp: float | None = None
    a: float | None = None
    b: float | None = None
    eta: float | None = None

    def param(self, name: str) -> float:
        return dict(self.params)[name]

    @property
    def param_dict(self) -> dict[str, float]:
        return dict(self.params)

    def describe(self) -> str:
        """Compact ``key:value`` rendering used in reports."""
        if not self.params:
            return "-"
        return ";".join(f"{k}:{v!r}" for k, v in self.params)


@dataclass(frozen=True)
class MomentSequence:
    """``log_rho[n] = ln rho_n`` for ``n = 0..n_max``."""

    family: FamilySpec
    log_rho: tuple[float, ...] = field(repr=False)

    @property
    def n_max(self) -> int:
        return len(self.log_rho) - 1

    def __getitem__(self, n: int) -> float:
        return self.log_rho[n]

    def __len__(self) -> int:
        return len(self.log_rho)


def _require_finite(name: str, value) -> float:
    try:
        out = float(value)
    except (TypeError, ValueError):
        raise ParameterError(f"parameter {name} must be a real number, got {value!r}",
                             constraint=f"{name} real") from None
    if not math.isfinite(out):
        raise ParameterError(f"parameter {name} must be finite, got {value!r}",
                             constraint=f"{name} finite")
    return out


def make_family(family_id: FamilyId | str, params: Mapping[str, float] | None = None) -> FamilySpec:
    """Validate parameters and build a :class:`FamilySpec`.

    Raises
    ------
    ParameterError
        Unknown family, missing/unexpected parameter, or a parameter out of
        range. The message and ``constraint`` attribute name the violated
        requirement (``tau > 0``, ``2j > 1``, ``1 + 4 gamma / tau >= 0`` ...).
    """
    fid = FamilyId.parse(family_id)
    params = dict(params or {})
    required = REQUIRED_PARAMS[fid]
    missing = [k for k in required if k not in params]
    if missing:
        raise ParameterError(f"family {fid.value} requires parameter(s) {', '.join(missing)}",
                             constraint=f"{missing[0]} present")
    extra = sorted(set(params) - set(required))
    if extra:
        raise ParameterError(f"family {fid.value} does not take parameter(s) {', '.join(extra)}",
                             constraint="no extra parameters")
    values = {k: _require_finite(k, params[k]) for k in required}
    frozen = tuple((k, values[k]) for k in required)

    if fid is FamilyId.GLAUBER:
        return FamilySpec(fid, frozen)

    if fid in (FamilyId.SU11, FamilyId.BARUT_GIRARDELLO):
        j = values["j"]
        if fid is FamilyId.SU11 and not 2.0 * j > 1.0:
            raise ParameterError(
                f"su11 requires 2j > 1 (density (2j-1)(1-t)^(2j-2) degenerates), got j={j!r}",
                constraint="2j > 1")
        if fid is FamilyId.BARUT_GIRARDELLO and not 2.0 * j >= 1.0:
            raise ParameterError(f"barut-girardello requires 2j >= 1, got j={j!r}",
                                 constraint="2j >= 1")
        return FamilySpec(fid, frozen)

    tau = values["tau"]
    if not tau > 0.0:
        raise ParameterError(f"{fid.value} requires tau > 0, got tau={tau!r}",
                             constraint="tau > 0")

    if fid is FamilyId.NC_OSCILLATOR:
        return FamilySpec(fid, frozen, alpha_exp=0.0, beta_exp=1.0 + 2.0 / tau)

    gamma, epsilon = values["gamma"], values["epsilon"]
    disc_a = 1.0 + 4.0 * gamma / tau
    disc_b = 1.0 + 4.0 * epsilon / tau
    if disc_a < 0.0:
        raise ParameterError(f"nc-poschl-teller requires 1 + 4 gamma / tau >= 0, got {disc_a!r}",
                             constraint="1 + 4 gamma / tau >= 0")
    if disc_b < 0.0:
        raise ParameterError(f"nc-poschl-teller requires 1 + 4 epsilon / tau >= 0, got {disc_b!r}",
                             constraint="1 + 4 epsilon / tau >= 0")
    a = 0.5 * math.sqrt(disc_a)
    b = 0.5 * math.sqrt(disc_b)
    return FamilySpec(fid, frozen, a=a, b=b, eta=(3.0 + a + b) / 2.0)


def eigenvalue(family: FamilySpec, n: int) -> float:
    """Dimensionless level ``e_n = rho_n / rho_{n-1}`` for ``n >= 1``."""
    if int(n) != n or n < 1:
        raise DomainError(f"eigenvalue index must be an integer >= 1, got {n!r}")
    n = int(n)
    fid = family.id
    if fid is FamilyId.GLAUBER:
        return float(n)
    if fid is FamilyId.SU11:
        j = family.param("j")
        return n / (2.0 * j + n - 1.0)
    if fid is FamilyId.BARUT_GIRARDELLO:
        j = family.param("j")
        return n * (2.0 * j + n - 1.0)
    if fid is FamilyId.NC_OSCILLATOR:
        tau = family.param("tau")
        return n * (1.0 + tau * (1.0 + n) / 2.0)
    tau = family.param("tau")
    return 2.0 * tau * (n + family.eta - 1.0) ** 2


def log_rho_n(family: FamilySpec, n: int) -> float:
    """Closed-form ``ln rho_n`` through log-gamma (not the running product)."""
    if int(n) != n or n < 0:
        raise DomainError(f"moment index must be an integer >= 0, got {n!r}")
    n = int(n)
    if n == 0:
        return 0.0
    fid = family.id
    lg_n1 = ln_gamma(n + 1.0)
    if fid is FamilyId.GLAUBER:
        return lg_n1
    if fid is FamilyId.SU11:
        two_j = 2.0 * family.param("j")
        return lg_n1 + ln_gamma(two_j) - ln_gamma(two_j + n)
    if fid is FamilyId.BARUT_GIRARDELLO:
        two_j = 2.0 * family.param("j")
        return lg_n1 + ln_gamma(two_j + n) - ln_gamma(two_j)
    if fid is FamilyId.NC_OSCILLATOR:
        tau = family.param("tau")
        beta = family.beta_exp
        # (tau/2)^n Gamma(n + alpha + 1) Gamma(n + beta + 1) / Gamma(1 + beta), alpha = 0
        return (n * math.log(tau / 2.0) + ln_gamma(n + family.alpha_exp + 1.0)
                + ln_gamma(n + beta + 1.0) - ln_gamma(1.0 + beta))
    tau = family.param("tau")
    eta = family.eta
    return n * math.log(2.0 * tau) + 2.0 * (ln_gamma(n + eta) - ln_gamma(eta))


def log_rho(family: FamilySpec, n_max: int) -> MomentSequence:
    """``ln rho_n`` for ``n = 0..n_max``."""
    if int(n_max) != n_max or n_max < 0:
        raise DomainError(f"n_max must be an integer >= 0, got {n_max!r}")
    return MomentSequence(family, tuple(log_rho_n(family, n) for n in range(int(n_max) + 1)))


def radius_of_convergence(family: FamilySpec) -> float:
    """Radius of the normalization series in the variable ``|alpha|^2``.

    Computed as ``lim rho_{n+1} / rho_n = lim e_n``.
    """
    return 1.0 if family.id is FamilyId.SU11 else math.inf


def normalization_terms(family: FamilySpec, abs_alpha_sq: float) -> tuple[list[float], float]:
    """Log terms ``n ln|alpha|^2 - ln rho_n`` of the normalization series.

    Terms are generated until the geometric tail bound drops below
    ``1e-16`` of the partial sum. Returns the list of log terms and the log of
    the tail bound (``-inf`` when the series terminates, i.e. alpha = 0).
    """
    x = float(abs_alpha_sq)
    if not (x >= 0.0 and math.isfinite(x)):
        raise DomainError(f"|alpha|^2 must be finite and >= 0, got {abs_alpha_sq!r}")
    radius = radius_of_convergence(family)
    if x >= radius:
        raise DivergenceError(
            f"|alpha|^2 = {x!r} lies outside the convergence domain |alpha|^2 < {radius!r} "
            f"of family {family.id.value}")
    if x == 0.0:
        return [0.0], -math.inf
    log_x = math.log(x)
    terms = [0.0]
    log_term = 0.0
    peak = 0.0
    scaled_sum = 1.0  # sum of exp(term - peak)
    n = 0
    log_rtol = math.log(_SERIES_RTOL)
    while True:
        e_next = eigenvalue(family, n + 1)
        ratio = x / e_next
        if ratio < 1.0:
            # ratios x/e_k decrease in k for every family, so the tail is geometric
            log_tail = log_term + math.log(ratio) - math.log1p(-ratio)
            if log_tail < peak + math.log(scaled_sum) + log_rtol:
                return terms, log_tail
        n += 1
        if n > _SERIES_MAX_TERMS:
            raise DivergenceError(
                f"normalization series for |alpha|^2 = {x!r} needs more than "
                f"{_SERIES_MAX_TERMS} terms; too close to the radius of convergence")
        log_term += log_x - math.log(e_next)
        terms.append(log_term)
        if log_term > peak:
            scaled_sum = scaled_sum * math.exp(peak - log_term) + 1.0
            peak = log_term
        else:
            scaled_sum += math.exp(log_term - peak)


def _logsumexp(values: list[float]) -> float:
    peak = max(values)
    if peak == -math.inf:
        return -math.inf
    return peak + math.log(math.fsum(math.exp(v - peak) for v in values))


def log_normalization(family: FamilySpec, abs_alpha_sq: float) -> float:
    """``ln N(|alpha|^2)`` with ``N = sum_n |alpha|^(2n) / rho_n``."""
    terms, _ = normalization_terms(family, abs_alpha_sq)
    return _logsumexp(terms)


def normalization(family: FamilySpec, abs_alpha_sq: float) -> float:
    """Normalization ``N(|alpha|^2) = sum_n |alpha|^(2n) / rho_n``.

    May overflow to ``inf`` for very large ``|alpha|^2``; use
    :func:`log_normalization` there.

    Raises
    ------
    DivergenceError
        ``abs_alpha_sq`` is at or beyond the radius of convergence.
    """
    log_n = log_normalization(family, abs_alpha_sq)
    try:
        return math.exp(log_n)
    except OverflowError:
        return math.inf
