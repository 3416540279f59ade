"""Completeness checks: do the closed-form measures reproduce rho_n?

For each ``n`` the moment ``int t^n Omega(t) dt`` is integrated numerically
and compared with the closed-form ``rho_n`` in log space, so the relative
error stays meaningful when ``rho_n ~ 1e40``.

Reports serialise to three formats with the same keys and field order:
``text`` (one ``key=value`` record per line), ``csv`` and ``json``. Floats
are written with 17 significant digits, so parsing an emitted report gives
back an equal report. Wall time is kept out of every format: identical runs
must produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from .errors import DomainError, QuadratureError, ToleranceError
from .families import FamilySpec, log_rho_n, make_family
from .measures import measure_for, support_grid
from .quadrature import MAX_TOL, MIN_TOL, integrate_moment

__all__ = [
    "MomentCheck",
    "VerificationReport",
    "PositivityResult",
    "verify_moments",
    "verify_positivity",
    "RECORD_FIELDS",
    "DEFAULT_N_MAX",
]

DEFAULT_N_MAX = 20
MIN_TOLERANCE = 1e-12
RECORD_FIELDS = ("family", "params", "n", "log_rho", "log_quad", "rel_err", "pass",
                 "quad_err", "evals", "transform", "converged")
HEADER_FIELDS = ("family", "params", "n_max", "tolerance", "max_rel_error", "passed")


def _fmt(x: float) -> str:
    return "%.17g" % x


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def _parse_bool(text: str) -> bool:
    if text not in ("true", "false"):
        raise ValueError(f"expected true/false, got {text!r}")
    return text == "true"


def _family_from_fields(fid: str, params: str) -> FamilySpec:
    values = {}
    if params not in ("", "-"):
        for item in params.split(";"):
            key, _, val = item.partition(":")
            values[key] = float(val)
    return make_family(fid, values)


@dataclass(frozen=True)
class MomentCheck:
    """Comparison for a single moment order."""

    n: int
    log_rho_closed: float
    log_moment_quad: float
    rel_error: float
    quad_rel_error: float
    evaluations: int
    transform: str
    converged: bool = True

    def passed(self, tolerance: float) -> bool:
        return self.converged and self.rel_error <= tolerance


@dataclass(frozen=True)
class VerificationReport:
    family: FamilySpec
    n_max: int
    per_n: tuple[MomentCheck, ...]
    max_rel_error: float
    passed: bool
    tolerance: float
    wall_time: float = field(default=0.0, compare=False)

    # -- emission -----------------------------------------------------------

    def _rows(self) -> list[dict[str, str]]:
        rows = []
        for c in self.per_n:
            rows.append({
                "family": self.family.id.value,
                "params": self.family.describe(),
                "n": str(c.n),
                "log_rho": _fmt(c.log_rho_closed),
                "log_quad": _fmt(c.log_moment_quad),
                "rel_err": _fmt(c.rel_error),
                "pass": _fmt_bool(c.passed(self.tolerance)),
                "quad_err": _fmt(c.quad_rel_error),
                "evals": str(c.evaluations),
                "transform": c.transform,
                "converged": _fmt_bool(c.converged),
            })
        return rows

    def _header(self) -> dict[str, str]:
        return {
            "family": self.family.id.value,
            "params": self.family.describe(),
            "n_max": str(self.n_max),
            "tolerance": _fmt(self.tolerance),
            "max_rel_error": _fmt(self.max_rel_error),
            "passed": _fmt_bool(self.passed),
        }

    def to_text(self) -> str:
        """Structured text: a ``#`` header line, then one record per moment."""
        head = self._header()
        lines = ["# " + " ".join(f"{k}={head[k]}" for k in HEADER_FIELDS)]
        for row in self._rows():
            lines.append(" ".join(f"{k}={row[k]}" for k in RECORD_FIELDS))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=RECORD_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self._rows())
        return buf.getvalue()

    def to_json(self) -> str:
        head = self._header()
        doc = {
            "family": head["family"],
            "params": self.family.param_dict,
            "n_max": self.n_max,
            "tolerance": self.tolerance,
            "max_rel_error": self.max_rel_error,
            "passed": self.passed,
            "records": [
                {
                    "family": self.family.id.value,
                    "params": self.family.describe(),
                    "n": c.n,
                    "log_rho": c.log_rho_closed,
                    "log_quad": c.log_moment_quad,
                    "rel_err": c.rel_error,
                    "pass": c.passed(self.tolerance),
                    "quad_err": c.quad_rel_error,
                    "evals": c.evaluations,
                    "transform": c.transform,
                    "converged": c.converged,
                }
                for c in self.per_n
            ],
        }
        return json.dumps(doc, indent=2) + "\n"

    # -- parsing ------------------------------------------------------------

    @staticmethod
    def _check_from_row(row: dict) -> MomentCheck:
        return MomentCheck(
            n=int(row["n"]),
            log_rho_closed=float(row["log_rho"]),
            log_moment_quad=float(row["log_quad"]),
            rel_error=float(row["rel_err"]),
            quad_rel_error=float(row["quad_err"]),
            evaluations=int(row["evals"]),
            transform=str(row["transform"]),
            converged=row["converged"] if isinstance(row["converged"], bool)
            else _parse_bool(row["converged"]),
        )

    @classmethod
    def _assemble(cls, family: FamilySpec, tolerance: float,
                  checks: list[MomentCheck], n_max: int | None = None) -> "VerificationReport":
        checks = sorted(checks, key=lambda c: c.n)
        max_err = max((c.rel_error for c in checks), default=0.0)
        passed = all(c.passed(tolerance) for c in checks)
        return cls(family, checks[-1].n if n_max is None else n_max, tuple(checks),
                   max_err, passed, tolerance)

    @classmethod
    def from_text(cls, text: str) -> "VerificationReport":
        header = None
        rows = []
        for line in text.splitlines():
            if not line.strip():
                continue
            body = line[1:].strip() if line.startswith("#") else line
            fields = dict(item.split("=", 1) for item in body.split())
            if line.startswith("#"):
                header = fields
            else:
                rows.append(fields)
        if header is None:
            raise ValueError("report text lacks the '#' header line")
        family = _family_from_fields(header["family"], header["params"])
        return cls._assemble(family, float(header["tolerance"]),
                             [cls._check_from_row(r) for r in rows], int(header["n_max"]))

    @classmethod
    def from_csv(cls, text: str, tolerance: float) -> "VerificationReport":
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            raise ValueError("empty CSV report")
        family = _family_from_fields(rows[0]["family"], rows[0]["params"])
        return cls._assemble(family, tolerance, [cls._check_from_row(r) for r in rows])

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        doc = json.loads(text)
        family = make_family(doc["family"], doc["params"])
        return cls._assemble(family, float(doc["tolerance"]),
                             [cls._check_from_row(r) for r in doc["records"]], int(doc["n_max"]))


def _check_one(measure, family: FamilySpec, n: int, quad_tol: float) -> MomentCheck:
    closed = log_rho_n(family, n)
    try:
        res = integrate_moment(measure, n, quad_tol)
    except QuadratureError as exc:
        return MomentCheck(n, closed, exc.log_estimate, math.inf, exc.rel_error_estimate,
                           exc.evaluations, exc.transform_used, converged=False)
    rel = abs(math.expm1(res.log_value - closed))
    return MomentCheck(n, closed, res.log_value, rel, res.rel_error_estimate,
                       res.evaluations, res.transform_used.value)


def verify_moments(family: FamilySpec, n_max: int = DEFAULT_N_MAX, tolerance: float = 1e-10,
                   workers: int = 1) -> VerificationReport:
    """Check ``int t^n Omega(t) dt = rho_n`` for ``n = 0..n_max``.

    A moment whose quadrature does not converge is recorded as failed
    (``converged=False``, ``rel_error=inf``) with the integrator's best
    estimate; it never raises. ``workers > 1`` spreads moments over threads;
    the report order is by ``n`` regardless.
    """
    if int(n_max) != n_max or n_max < 0:
        raise DomainError(f"n_max must be an integer >= 0, got {n_max!r}")
    tolerance = float(tolerance)
    if not tolerance >= MIN_TOLERANCE:
        raise ToleranceError(f"verification tolerance {tolerance!r} is below {MIN_TOLERANCE}")
    quad_tol = min(MAX_TOL, max(MIN_TOL, 0.1 * tolerance))
    start = time.perf_counter()
    measure = measure_for(family)
    orders = range(int(n_max) + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            checks = list(pool.map(lambda n: _check_one(measure, family, n, quad_tol), orders))
    else:
        checks = [_check_one(measure, family, n, quad_tol) for n in orders]
    report = VerificationReport._assemble(family, tolerance, checks, int(n_max))
    return replace(report, wall_time=time.perf_counter() - start)


@dataclass(frozen=True)
class PositivityResult:
    ok: bool
    first_failure: float | None
    grid_size: int

    def __bool__(self) -> bool:
        return self.ok


def verify_positivity(family: FamilySpec, grid_size: int = 200) -> PositivityResult:
    """Check that ``ln Omega`` is finite on a log-spaced grid over the support.

    The grid stops where ``ln Omega`` falls below -700 on infinite supports.
    """
    if int(grid_size) != grid_size or grid_size < 2:
        raise DomainError(f"grid_size must be an integer >= 2, got {grid_size!r}")
    measure = measure_for(family)
    for t in support_grid(measure, int(grid_size)):
        try:
            value = measure.log_density(float(t))
        except (ArithmeticError, DomainError):
            return PositivityResult(False, float(t), int(grid_size))
        if not math.isfinite(value):
            return PositivityResult(False, float(t), int(grid_size))
    return PositivityResult(True, None, int(grid_size))
