"""
Small dense symmetric eigenproblems by cyclic Jacobi rotations
"""

import logging
import math
from typing import NamedTuple, Tuple, Union

import numpy as np

from ..errors import ConvergenceError, DimensionMismatchError, DomainError
from .types import SymMatrix

logger = logging.getLogger(__name__)

MAX_SWEEPS = 100
OFF_TOL = 1e-15


class PsdResult(NamedTuple):
    is_psd: bool
    min_eigenvalue: float


def _as_square(m: Union[SymMatrix, np.ndarray]) -> np.ndarray:
    a = m.entries if isinstance(m, SymMatrix) else np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
    return a


def jacobi_eigh(
    m: Union[SymMatrix, np.ndarray], max_sweeps: int = MAX_SWEEPS
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigen-decomposition of a symmetric matrix by row-cyclic Jacobi sweeps.

    Args:
        m: Symmetric matrix
        max_sweeps: Sweeps allowed before giving up

    Returns:
        (eigenvalues ascending, eigenvectors as columns)
    """
    a = np.array(_as_square(m), dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v

    fro = math.sqrt(float(np.sum(a * a)))
    for sweep in range(max_sweeps):
        off = math.sqrt(max(float(np.sum(a * a) - np.sum(np.diag(a) ** 2)), 0.0))
        if off <= OFF_TOL * fro or off == 0.0:
            logger.debug(f"Jacobi converged after {sweep} sweeps (n={n}, off={off:.3e})")
            break

        rotations = 0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                if abs(apq) <= 1e-18 * (abs(app) + abs(aqq)):
                    a[p, q] = a[q, p] = 0.0
                    continue

                tau = (aqq - app) / (2.0 * apq)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
                rotations += 1

        if rotations == 0:
            logger.debug(f"Jacobi stalled cleanly at sweep {sweep} (n={n})")
            break
    else:
        raise ConvergenceError(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps (n={n})")

    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]


def eigvalsh_sym(m: Union[SymMatrix, np.ndarray]) -> np.ndarray:
    """Eigenvalues in ascending order; diagonal input is read off directly."""
    a = _as_square(m)
    if not np.any(a - np.diag(np.diag(a))):
        return np.sort(np.diag(a).copy())
    return jacobi_eigh(a)[0]


def operator_norm_sym(m: Union[SymMatrix, np.ndarray]) -> float:
    """Spectral norm of a symmetric matrix: largest absolute eigenvalue."""
    return float(np.max(np.abs(eigvalsh_sym(m))))


def psd_check(m: Union[SymMatrix, np.ndarray], tol: float) -> PsdResult:
    """
    Check positive semidefiniteness.

    Args:
        m: Symmetric matrix
        tol: Absolute tolerance, >= 0

    Returns:
        PsdResult(is_psd = min eigenvalue >= -tol, min eigenvalue)
    """
    if tol < 0:
        raise DomainError(f"tolerance must be non-negative, got {tol}")
    min_eig = float(eigvalsh_sym(m)[0])
    return PsdResult(min_eig >= -tol, min_eig)


def clip_negative_eigenvalues(m: SymMatrix) -> Tuple[SymMatrix, float]:
    """
    Replace negative eigenvalues by zero.

    Returns:
        (clipped matrix, removed negative mass sum |λ_-|)
    """
    w, v = jacobi_eigh(m)
    removed = float(-np.sum(w[w < 0.0]))
    w = np.where(w < 0.0, 0.0, w)
    return SymMatrix((v * w) @ v.T), removed
