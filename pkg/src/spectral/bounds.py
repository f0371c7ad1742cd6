"""
Bounds and inequality checks on the truncated energy covariance

All checks are exact statements about a finite spectrum; each returns both sides
of its inequality so callers can report margins, plus a `holds` flag that allows a
relative rounding slack of RELATIVE_SLACK.
"""

import logging
import math
from typing import Dict, NamedTuple, Optional, Sequence

import numpy as np

from ..errors import DimensionMismatchError, DomainError
from .linalg import operator_norm_sym
from .lyapunov_solver import solve_spectral_lyapunov
from .types import DissipativeSpectrum, SymMatrix

logger = logging.getLogger(__name__)

RELATIVE_SLACK = 1e-12


class TruncationBounds(NamedTuple):
    coarse: float
    improved: float


class InequalityCheck(NamedTuple):
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs + RELATIVE_SLACK * abs(self.rhs)


def _vector(values, dim: int, name: str) -> np.ndarray:
    v = np.asarray(values, dtype=float).reshape(-1)
    if v.shape[0] != dim:
        raise DimensionMismatchError(f"{name} has length {v.shape[0]}, expected {dim}")
    return v


def truncation_bound(full_spec: DissipativeSpectrum, N: int, Q_norm: float) -> TruncationBounds:
    """
    Operator-norm bounds on ‖P - P_N‖.

    Args:
        full_spec: Spectrum with more than N modes, sorted descending
        N: Truncation size, 1 <= N < mode count
        Q_norm: Operator norm of the noise, >= 0

    Returns:
        coarse = ‖Q‖ / (2 γ_eff), improved = ‖Q‖ / (2 |λ_{N+1}|)
    """
    if not 1 <= N < full_spec.dim:
        raise DomainError(f"N must satisfy 1 <= N < {full_spec.dim}, got {N}")
    if Q_norm < 0:
        raise DomainError(f"Q_norm must be non-negative, got {Q_norm}")
    coarse = Q_norm / (2.0 * full_spec.gamma_eff)
    improved = Q_norm / (2.0 * abs(float(full_spec.eigenvalues[N])))
    return TruncationBounds(coarse=coarse, improved=improved)


def semigroup_decay_check(spec: DissipativeSpectrum, coeffs: Sequence[float], t: float) -> InequalityCheck:
    """
    ‖e^{Λt} c‖² = Σ e^{2λ_k t} c_k²  <=  e^{2λ_1 t} ‖c‖².
    """
    if t < 0:
        raise DomainError(f"t must be non-negative, got {t}")
    c2 = _vector(coeffs, spec.dim, "coeffs") ** 2
    lhs = float(np.sum(np.exp(2.0 * spec.eigenvalues * t) * c2))
    rhs = float(math.exp(2.0 * spec.eigenvalues[0] * t) * np.sum(c2))
    return InequalityCheck(lhs, rhs)


def contraction_check(spec: DissipativeSpectrum, t: float) -> InequalityCheck:
    """‖e^{Λt}‖_op = e^{λ_1 t}  <=  e^{-γ_eff t}."""
    if t < 0:
        raise DomainError(f"t must be non-negative, got {t}")
    lhs = float(np.max(np.exp(spec.eigenvalues * t)))
    rhs = math.exp(-spec.gamma_eff * t)
    return InequalityCheck(lhs, rhs)


def dissipativity_check(spec: DissipativeSpectrum, coeffs: Sequence[float]) -> InequalityCheck:
    """Rayleigh quotient ⟨c, Λc⟩ / ‖c‖²  <=  -γ_eff."""
    c2 = _vector(coeffs, spec.dim, "coeffs") ** 2
    total = float(np.sum(c2))
    if total == 0.0:
        raise DomainError("Rayleigh quotient undefined for the zero vector")
    return InequalityCheck(float(np.sum(spec.eigenvalues * c2)) / total, -spec.gamma_eff)


def integral_bound_check(
    spec: DissipativeSpectrum,
    Q: SymMatrix,
    phi: Sequence[float],
    psi: Sequence[float],
    P: Optional[SymMatrix] = None,
    q_norm: Optional[float] = None,
) -> InequalityCheck:
    """
    |⟨φ, Pψ⟩|  <=  ‖φ‖ ‖ψ‖ ‖Q‖ / (2 γ_eff).

    P and ‖Q‖ are computed when not supplied; pass them in when checking many vectors.
    """
    if Q.dim != spec.dim:
        raise DimensionMismatchError(f"Q dimension {Q.dim} does not match {spec.dim} modes")
    f = _vector(phi, spec.dim, "phi")
    g = _vector(psi, spec.dim, "psi")
    if P is None:
        P = solve_spectral_lyapunov(spec, Q).P
    if q_norm is None:
        q_norm = operator_norm_sym(Q)
    value = abs(float(f @ P.entries @ g))
    bound = float(np.linalg.norm(f) * np.linalg.norm(g) * q_norm / (2.0 * spec.gamma_eff))
    return InequalityCheck(value, bound)


def energy_budget(spec: DissipativeSpectrum, P: SymMatrix) -> Dict[str, object]:
    """
    Mode energies of a covariance: variances, total energy and captured fractions.
    """
    if P.dim != spec.dim:
        raise DimensionMismatchError(f"P dimension {P.dim} does not match {spec.dim} modes")
    variances = P.diagonal
    total = float(np.sum(variances))
    if total > 0:
        captured = np.cumsum(variances) / total
    else:
        captured = np.zeros_like(variances)
    return {
        "mode_variances": variances.tolist(),
        "total_energy": total,
        "captured_fraction": captured.tolist(),
        "relaxation_time": 1.0 / spec.gamma_eff,
    }


def decay_rate_fit(x: Sequence[float], y: Sequence[float]) -> float:
    """
    Least-squares slope of log y against log x over entries with x, y > 0.
    """
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    if xs.shape != ys.shape:
        raise DimensionMismatchError(f"x and y differ in shape: {xs.shape} vs {ys.shape}")
    keep = (xs > 0) & (ys > 0)
    if np.count_nonzero(keep) < 2:
        raise DomainError("decay rate fit needs at least two positive points")
    slope, _ = np.polyfit(np.log(xs[keep]), np.log(ys[keep]), 1)
    return float(slope)
