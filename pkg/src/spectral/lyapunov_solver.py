"""
Lyapunov solves for the steady-state energy covariance

In the eigenbasis of a self-adjoint dissipative generator the balance equation
ΛP + PΛ = -Q decouples entry by entry, P_jk = Q_jk / (-(λ_j + λ_k)). The dense
Kronecker solve and the time-quadrature of the dissipation integral are independent
oracles for that formula.
"""

import logging
from typing import Optional

import numpy as np

from ..errors import ComputationError, DimensionMismatchError, DomainError
from .linalg import eigvalsh_sym
from .types import DissipativeSpectrum, LyapunovSolution, SymMatrix

logger = logging.getLogger(__name__)

PSD_REL_TOL = 1e-10
DENSE_ORACLE_MAX_DIM = 64
DEFAULT_QUADRATURE_STEPS = 10_000


def _check_dims(spec: DissipativeSpectrum, *mats: SymMatrix):
    for mat in mats:
        if mat.dim != spec.dim:
            raise DimensionMismatchError(
                f"matrix dimension {mat.dim} does not match {spec.dim} modes"
            )


def _pair_sums(spec: DissipativeSpectrum) -> np.ndarray:
    lam = spec.eigenvalues
    return lam[:, None] + lam[None, :]


def lyapunov_residual(spec: DissipativeSpectrum, Q: SymMatrix, P: SymMatrix) -> float:
    """
    Relative residual of the balance equation ΛP + PΛ = -Q.

    Returns:
        max_jk |λ_j P_jk + P_jk λ_k + Q_jk| / max(1, max_jk |Q_jk|)
    """
    _check_dims(spec, Q, P)
    lam = spec.eigenvalues
    p = P.entries
    r = lam[:, None] * p + p * lam[None, :] + Q.entries
    return float(np.max(np.abs(r)) / max(1.0, Q.max_abs()))


def solve_spectral_lyapunov(spec: DissipativeSpectrum, Q: SymMatrix) -> LyapunovSolution:
    """
    Solve the truncated balance equation entrywise.

    Args:
        spec: Dissipative spectrum (all eigenvalues < 0)
        Q: Projected noise matrix

    Returns:
        LyapunovSolution with P, its relative residual and smallest eigenvalue
    """
    _check_dims(spec, Q)
    P = SymMatrix(Q.entries / -_pair_sums(spec))
    residual = lyapunov_residual(spec, Q, P)

    eigenvalues = eigvalsh_sym(P)
    min_eig = float(eigenvalues[0])
    norm = float(np.max(np.abs(eigenvalues)))
    if min_eig < -PSD_REL_TOL * norm:
        logger.warning(
            f"Energy covariance has eigenvalue {min_eig:.3e} below -{PSD_REL_TOL:g}·‖P‖ "
            f"(‖P‖={norm:.3e}); is Q positive semidefinite?"
        )

    logger.debug(f"Spectral solve: dim={spec.dim}, residual={residual:.3e}, min_eig={min_eig:.3e}")
    return LyapunovSolution(P=P, residual_rel=residual, min_eigenvalue=min_eig)


def solve_dense_lyapunov(spec: DissipativeSpectrum, Q: SymMatrix) -> SymMatrix:
    """
    Oracle: solve (I⊗Λ + Λ⊗I) vec(P) = -vec(Q) as one dense linear system.

    Limited to dim <= 64 (4096 unknowns).
    """
    _check_dims(spec, Q)
    n = spec.dim
    if n > DENSE_ORACLE_MAX_DIM:
        raise DomainError(f"dense oracle limited to dim <= {DENSE_ORACLE_MAX_DIM}, got {n}")

    lam = np.diag(spec.eigenvalues)
    eye = np.eye(n)
    system = np.kron(eye, lam) + np.kron(lam, eye)
    try:
        vec_p = np.linalg.solve(system, -Q.entries.reshape(-1))
    except np.linalg.LinAlgError as e:
        raise ComputationError(f"Kronecker system singular despite negative spectrum: {e}") from e
    return SymMatrix(vec_p.reshape(n, n))


def quadrature_oracle_covariance(
    spec: DissipativeSpectrum,
    Q: SymMatrix,
    horizon: Optional[float] = None,
    steps: int = DEFAULT_QUADRATURE_STEPS,
) -> SymMatrix:
    """
    Oracle: evaluate the dissipation integral ∫₀^∞ e^{(λ_j+λ_k)t} Q_jk dt entrywise.

    Composite Simpson on [0, horizon] plus the exact exponential tail beyond it.

    Args:
        spec: Dissipative spectrum
        Q: Projected noise matrix
        horizon: Quadrature horizon, default 10 / gamma_eff
        steps: Number of Simpson intervals (odd counts are raised by one)

    Returns:
        Time-quadrature approximation of P
    """
    _check_dims(spec, Q)
    if horizon is None:
        horizon = 10.0 / spec.gamma_eff
    if horizon <= 0:
        raise DomainError(f"horizon must be positive, got {horizon}")
    if steps < 2:
        raise DomainError(f"steps must be >= 2, got {steps}")
    if steps % 2:
        logger.warning(f"Simpson rule needs an even interval count; using {steps + 1}")
        steps += 1

    t = np.linspace(0.0, horizon, steps + 1)
    w = np.ones(steps + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    w *= horizon / (3.0 * steps)

    s = _pair_sums(spec)
    factor = np.empty_like(s)
    for j in range(spec.dim):
        factor[j, :] = np.exp(np.outer(s[j, :], t)) @ w
    factor += np.exp(s * horizon) / -s
    return SymMatrix(Q.entries * factor)
