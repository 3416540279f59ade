"""Command-line front end.

Usage::

    nlcoherent list-families
    nlcoherent verify-moments --family nc-oscillator --tau 0.1 --n-max 20 --tol 1e-8
    nlcoherent measure-eval --family nc-poschl-teller --tau 0.2 --gamma 0.2 --epsilon 0.2 --grid 100
    nlcoherent state-coeffs --family su11 --j 1 --alpha-re 0.7 --out coeffs.csv
    nlcoherent radius --family su11 --j 1
    nlcoherent --config run.cfg            # command taken from the file

Exit codes: 0 success / verification passed, 1 verification failed (the
report is still written), 2 usage or parameter error.

Config files hold one ``key = value`` per line with ``#`` comments. Keys
mirror the flags (``family, tau, j, gamma, epsilon, n_max, tolerance,
alpha_re, alpha_im, grid, out, format, command``). Flags override the file,
the file overrides built-in defaults.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import NLCoherentError, ParameterError
from .families import REQUIRED_PARAMS, FamilyId, make_family, radius_of_convergence
from .measures import measure_for, support_grid
from .states import build_state
from .verify import DEFAULT_N_MAX, verify_moments

__all__ = ["main", "RunConfig", "load_config", "resolve_config", "COMMANDS"]

COMMANDS = ("list-families", "verify-moments", "measure-eval", "state-coeffs", "radius")
FORMATS = ("csv", "structured", "json")
FORMATS_BY_COMMAND = {
    "list-families": ("structured", "csv"),
    "verify-moments": ("structured", "csv", "json"),
    "measure-eval": ("csv",),
    "state-coeffs": ("csv",),
    "radius": ("structured",),
}
FAMILY_PARAMS = ("tau", "j", "gamma", "epsilon")

DEFAULTS = {
    "n_max": DEFAULT_N_MAX,
    "alpha_re": 0.0,
    "alpha_im": 0.0,
    "grid": 200,
    "out": None,
}
DEFAULT_TOLERANCE = {"verify-moments": 1e-10, "state-coeffs": 1e-12}

_KEY_ALIASES = {"tol": "tolerance", "output_path": "out", "n-max": "n_max",
                "alpha-re": "alpha_re", "alpha-im": "alpha_im"}
_CONVERTERS = {
    "command": str, "family": str, "format": str, "out": str,
    "tau": float, "j": float, "gamma": float, "epsilon": float,
    "tolerance": float, "alpha_re": float, "alpha_im": float,
    "n_max": int, "grid": int,
}


class UsageError(Exception):
    """Bad command line or config file; reported with exit status 2."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    family: str | None
    params: dict
    n_max: int
    tolerance: float | None
    alpha_re: float
    alpha_im: float
    grid: int
    out: str | None
    format: str


def _fmt(x: float) -> str:
    return "%.17g" % x


def load_config(path: str | Path) -> dict:
    """Parse a flat ``key = value`` file into typed values."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from None
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, value = (part.strip() for part in line.partition("="))
        key = _KEY_ALIASES.get(key, key)
        if key not in _CONVERTERS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _CONVERTERS[key](value)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value {value!r} for {key}") from None
    return values


def resolve_config(flags: dict, file_values: dict) -> RunConfig:
    """Merge flags over config-file values over defaults."""
    merged = dict(DEFAULTS)
    merged.update(file_values)
    merged.update({k: v for k, v in flags.items() if v is not None})
    command = merged.get("command")
    if command is None:
        raise UsageError("no command given (pass a subcommand or set 'command' in the config file)")
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    fmt = merged.get("format") or FORMATS_BY_COMMAND[command][0]
    if fmt not in FORMATS_BY_COMMAND[command]:
        raise UsageError(f"format {fmt!r} is not supported by {command} "
                         f"(supported: {', '.join(FORMATS_BY_COMMAND[command])})")
    params = {k: merged[k] for k in FAMILY_PARAMS if merged.get(k) is not None}
    return RunConfig(
        command=command,
        family=merged.get("family"),
        params=params,
        n_max=merged["n_max"],
        tolerance=merged.get("tolerance", DEFAULT_TOLERANCE.get(command)),
        alpha_re=merged["alpha_re"],
        alpha_im=merged["alpha_im"],
        grid=merged["grid"],
        out=merged["out"],
        format=fmt,
    )


def _family(config: RunConfig):
    if config.family is None:
        raise ParameterError(f"{config.command} requires --family", constraint="family present")
    return make_family(config.family, config.params)


def _emit(config: RunConfig, text: str) -> None:
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_list_families(config: RunConfig) -> int:
    rows = []
    for fid in FamilyId:
        support = "(0,1)" if fid is FamilyId.SU11 else "(0,inf)"
        radius = "1" if fid is FamilyId.SU11 else "inf"
        rows.append((fid.value, ";".join(REQUIRED_PARAMS[fid]) or "-", support, radius))
    if config.format == "csv":
        lines = ["family,params,support,radius"] + [",".join(r) for r in rows]
    else:
        lines = [f"family={a} params={b} support={c} radius={d}" for a, b, c, d in rows]
    _emit(config, "\n".join(lines) + "\n")
    return 0


def _cmd_verify(config: RunConfig) -> int:
    family = _family(config)
    report = verify_moments(family, config.n_max, config.tolerance)
    if config.format == "csv":
        text = report.to_csv()
    elif config.format == "json":
        text = report.to_json()
    else:
        text = report.to_text()
    _emit(config, text)
    verdict = "PASS" if report.passed else "FAIL"
    print(f"{verdict} {family.id.value} {family.describe()} n_max={report.n_max} "
          f"max_rel_error={report.max_rel_error:.3e} tol={report.tolerance:g} "
          f"({report.wall_time:.2f}s)", file=sys.stderr)
    return 0 if report.passed else 1


def _cmd_measure_eval(config: RunConfig) -> int:
    measure = measure_for(_family(config))
    lines = ["t,omega,log_omega"]
    for t in support_grid(measure, config.grid):
        t = float(t)
        log_omega = measure.log_density(t)
        lines.append(f"{_fmt(t)},{_fmt(math.exp(log_omega))},{_fmt(log_omega)}")
    _emit(config, "\n".join(lines) + "\n")
    return 0


def _cmd_state_coeffs(config: RunConfig) -> int:
    state = build_state(_family(config), complex(config.alpha_re, config.alpha_im),
                        config.tolerance)
    lines = ["n,prob,phase"]
    for n, (lm, ph) in enumerate(zip(state.log_magnitudes, state.phases)):
        phase = math.remainder(ph, 2.0 * math.pi)
        lines.append(f"{n},{_fmt(math.exp(2.0 * lm))},{_fmt(phase)}")
    _emit(config, "\n".join(lines) + "\n")
    return 0


def _cmd_radius(config: RunConfig) -> int:
    _emit(config, _fmt(radius_of_convergence(_family(config))) + "\n")
    return 0


_HANDLERS = {
    "list-families": _cmd_list_families,
    "verify-moments": _cmd_verify,
    "measure-eval": _cmd_measure_eval,
    "state-coeffs": _cmd_state_coeffs,
    "radius": _cmd_radius,
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    sup = argparse.SUPPRESS
    parser.add_argument("--config", default=sup, help="key = value configuration file")
    parser.add_argument("--family", default=sup, help="family id, see list-families")
    parser.add_argument("--tau", type=float, default=sup, help="deformation parameter tau > 0")
    parser.add_argument("--j", type=float, default=sup, help="SU(1,1) / Barut-Girardello index j")
    parser.add_argument("--gamma", type=float, default=sup, help="Poschl-Teller gamma")
    parser.add_argument("--epsilon", type=float, default=sup, help="Poschl-Teller epsilon")
    parser.add_argument("--n-max", dest="n_max", type=int, default=sup,
                        help=f"highest moment order (default {DEFAULT_N_MAX})")
    parser.add_argument("--tol", dest="tolerance", type=float, default=sup,
                        help="verification tolerance or state truncation tolerance")
    parser.add_argument("--alpha-re", dest="alpha_re", type=float, default=sup)
    parser.add_argument("--alpha-im", dest="alpha_im", type=float, default=sup)
    parser.add_argument("--grid", type=int, default=sup, help="number of grid points")
    parser.add_argument("--out", default=sup, help="output file (default stdout)")
    parser.add_argument("--format", choices=FORMATS, default=sup)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlcoherent",
        description="Coherent-state families and numerical checks of their completeness measures.")
    _add_common(parser)
    sub = parser.add_subparsers(dest="command", metavar="command")
    helps = {
        "list-families": "print the family catalog",
        "verify-moments": "check int t^n Omega(t) dt = rho_n by quadrature",
        "measure-eval": "tabulate the weight function as CSV",
        "state-coeffs": "export Fock coefficients of a coherent state as CSV",
        "radius": "print the radius of convergence in |alpha|^2",
    }
    for name in COMMANDS:
        _add_common(sub.add_parser(name, help=helps[name], argument_default=argparse.SUPPRESS))
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = vars(parser.parse_args(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        file_values = load_config(args.pop("config")) if "config" in args else {}
        config = resolve_config(args, file_values)
        return _HANDLERS[config.command](config)
    except (UsageError, NLCoherentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
