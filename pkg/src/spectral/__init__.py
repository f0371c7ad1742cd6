"""
Spectral core for energycov
Entrywise Lyapunov solve of the truncated energy covariance, its oracles and bounds
"""

from .types import DissipativeSpectrum, SymMatrix, LyapunovSolution
from .linalg import jacobi_eigh, eigvalsh_sym, operator_norm_sym, psd_check, PsdResult
from .lyapunov_solver import (
    solve_spectral_lyapunov,
    lyapunov_residual,
    solve_dense_lyapunov,
    quadrature_oracle_covariance,
)
from .bounds import (
    truncation_bound,
    semigroup_decay_check,
    contraction_check,
    dissipativity_check,
    integral_bound_check,
    energy_budget,
    decay_rate_fit,
    TruncationBounds,
    InequalityCheck,
)

__all__ = [
    "DissipativeSpectrum",
    "SymMatrix",
    "LyapunovSolution",
    "jacobi_eigh",
    "eigvalsh_sym",
    "operator_norm_sym",
    "psd_check",
    "PsdResult",
    "solve_spectral_lyapunov",
    "lyapunov_residual",
    "solve_dense_lyapunov",
    "quadrature_oracle_covariance",
    "truncation_bound",
    "semigroup_decay_check",
    "contraction_check",
    "dissipativity_check",
    "integral_bound_check",
    "energy_budget",
    "decay_rate_fit",
    "TruncationBounds",
    "InequalityCheck",
]
