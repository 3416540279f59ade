"""Truncated nonlinear coherent states in the Fock basis.

``|alpha, f> = N^{-1/2} sum_n alpha^n / sqrt(rho_n) |n>``. Coefficients are
stored as (log-magnitude, phase) pairs; ``rho_n`` spans hundreds of orders
of magnitude long before the tail becomes negligible.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, FamilyMismatchError
from .families import FamilySpec, normalization_terms

__all__ = ["CoherentState", "build_state", "overlap"]


@dataclass(frozen=True)
class CoherentState:
    """A coherent state truncated at Fock level ``truncation``.

    ``norm_residual`` is the probability mass beyond the truncation,
    ``1 - sum_n |c_n|^2``, computed directly from the tail so it does not
    suffer cancellation.
    """

    family: FamilySpec
    alpha: complex
    truncation: int
    log_magnitudes: tuple[float, ...] = field(repr=False)
    phases: tuple[float, ...] = field(repr=False)
    norm_residual: float

    @property
    def coeffs(self) -> np.ndarray:
        mags = np.exp(np.asarray(self.log_magnitudes))
        return mags * np.exp(1j * np.asarray(self.phases))

    @property
    def probabilities(self) -> np.ndarray:
        return np.exp(2.0 * np.asarray(self.log_magnitudes))

    def residual_profile(self) -> np.ndarray:
        """``1 - sum_{k<=N} |c_k|^2`` for every ``N`` up to the truncation."""
        probs = self.probabilities
        suffix = np.concatenate([np.cumsum(probs[::-1])[::-1][1:], [0.0]])
        return suffix + self.norm_residual

    def norm(self) -> float:
        """``<alpha|alpha>`` of the truncated vector."""
        return math.fsum(math.exp(2.0 * lm) for lm in self.log_magnitudes)


def build_state(family: FamilySpec, alpha: complex, tol: float = 1e-12) -> CoherentState:
    """Coherent state with the smallest truncation whose residual is below ``tol``.

    Raises
    ------
    DivergenceError
        ``|alpha|^2`` is at or beyond the radius of convergence.
    DomainError
        ``tol`` not in ``(0, 1)``.
    """
    if not 0.0 < tol < 1.0:
        raise DomainError(f"truncation tolerance must lie in (0, 1), got {tol!r}")
    alpha = complex(alpha)
    abs_sq = alpha.real * alpha.real + alpha.imag * alpha.imag
    terms, log_tail = normalization_terms(family, abs_sq)
    peak = max(terms)
    log_norm = peak + math.log(math.fsum(math.exp(v - peak) for v in terms))
    probs = [math.exp(v - log_norm) for v in terms]
    beyond = math.exp(log_tail - log_norm) if log_tail > -math.inf else 0.0

    # residual after level N is the exact suffix sum plus the certified tail
    suffix = [0.0] * len(probs)
    running = 0.0
    for n in range(len(probs) - 1, -1, -1):
        suffix[n] = running
        running += probs[n]
    truncation = len(probs) - 1
    for n, rest in enumerate(suffix):
        if rest + beyond < tol:
            truncation = n
            break
    residual = suffix[truncation] + beyond

    theta = cmath.phase(alpha) if abs_sq > 0.0 else 0.0
    log_mags = tuple(0.5 * (terms[n] - log_norm) for n in range(truncation + 1))
    phases = tuple(n * theta for n in range(truncation + 1))
    return CoherentState(family, alpha, truncation, log_mags, phases, residual)


def overlap(s1: CoherentState, s2: CoherentState) -> complex:
    """``<s1|s2> = sum_n conj(c_n(s1)) c_n(s2)`` over the common truncation."""
    if s1.family != s2.family:
        raise FamilyMismatchError(
            f"cannot overlap states of {s1.family.id.value}{s1.family.params} "
            f"and {s2.family.id.value}{s2.family.params}")
    common = min(s1.truncation, s2.truncation) + 1
    re_parts = []
    im_parts = []
    for n in range(common):
        mag = math.exp(s1.log_magnitudes[n] + s2.log_magnitudes[n])
        dphi = s2.phases[n] - s1.phases[n]
        re_parts.append(mag * math.cos(dphi))
        im_parts.append(mag * math.sin(dphi))
    return complex(math.fsum(re_parts), math.fsum(im_parts))
