"""
Core numerical types: dissipative spectra and symmetric matrices
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from ..errors import DimensionMismatchError, InvalidSpectrumError


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SymMatrix:
    """
    Dense real symmetric matrix.

    Construction symmetrizes the input as (A + Aᵀ)/2, which is exact for inputs that
    are already symmetric and makes entries[j][k] == entries[k][j] bit for bit.
    """

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatchError(f"SymMatrix needs a square matrix, got shape {a.shape}")
        if a.shape[0] < 1:
            raise DimensionMismatchError("SymMatrix dimension must be positive")
        object.__setattr__(self, "entries", _frozen((a + a.T) / 2.0))

    @classmethod
    def identity(cls, dim: int, scale: float = 1.0) -> "SymMatrix":
        return cls(scale * np.eye(dim))

    @classmethod
    def diagonal_matrix(cls, values: Sequence[float]) -> "SymMatrix":
        return cls(np.diag(np.asarray(values, dtype=float)))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.entries).copy()

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.entries)))

    def is_diagonal(self) -> bool:
        return not np.any(self.entries - np.diag(np.diag(self.entries)))

    def leading_block(self, n: int) -> "SymMatrix":
        """Top-left n×n block."""
        if not 1 <= n <= self.dim:
            raise DimensionMismatchError(f"block size {n} outside 1..{self.dim}")
        return SymMatrix(self.entries[:n, :n])

    def scaled(self, c: float) -> "SymMatrix":
        return SymMatrix(c * self.entries)

    def to_list(self) -> List[List[float]]:
        return self.entries.tolist()


@dataclass(frozen=True)
class DissipativeSpectrum:
    """
    Ordered strictly negative eigenvalues with their mode labels.

    Eigenvalues are sorted descending (eigenvalues[0] is the largest); gamma_eff is the
    spectral gap -eigenvalues[0].
    """

    modes: Tuple[Any, ...]
    eigenvalues: np.ndarray

    def __post_init__(self):
        lam = np.array(self.eigenvalues, dtype=float).reshape(-1)
        modes = tuple(self.modes)
        if len(modes) != lam.shape[0]:
            raise DimensionMismatchError(
                f"{len(modes)} modes but {lam.shape[0]} eigenvalues"
            )
        if lam.shape[0] < 1:
            raise InvalidSpectrumError("spectrum must contain at least one mode")
        if not np.all(np.isfinite(lam)):
            raise InvalidSpectrumError("spectrum contains non-finite eigenvalues")
        if np.any(lam >= 0.0):
            bad = int(np.argmax(lam >= 0.0))
            raise InvalidSpectrumError(
                f"eigenvalue {lam[bad]} at position {bad} is not strictly negative"
            )
        if np.any(np.diff(lam) > 0.0):
            raise InvalidSpectrumError("eigenvalues must be sorted in descending order")
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "eigenvalues", _frozen(lam))

    @classmethod
    def from_eigenvalues(cls, eigenvalues: Sequence[float]) -> "DissipativeSpectrum":
        """Spectrum with positional labels 0..n-1, for tests and ad-hoc instances."""
        lam = np.asarray(eigenvalues, dtype=float)
        return cls(modes=tuple(range(lam.shape[0])), eigenvalues=lam)

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def gamma_eff(self) -> float:
        return float(-self.eigenvalues[0])

    def truncate(self, n: int) -> "DissipativeSpectrum":
        """First n modes."""
        if not 1 <= n <= self.dim:
            raise DimensionMismatchError(f"truncation {n} outside 1..{self.dim}")
        return DissipativeSpectrum(self.modes[:n], self.eigenvalues[:n])

    def records(self) -> List[Dict[str, Any]]:
        out = []
        for mode, lam in zip(self.modes, self.eigenvalues):
            if hasattr(mode, "indices"):
                out.append(
                    {"geometry": mode.geometry, "indices": mode.indices(), "eigenvalue": float(lam)}
                )
            else:
                out.append({"geometry": "generic", "indices": {"index": mode}, "eigenvalue": float(lam)})
        return out


@dataclass(frozen=True)
class LyapunovSolution:
    """Energy covariance P with its balance residual and smallest eigenvalue."""

    P: SymMatrix
    residual_rel: float
    min_eigenvalue: float
    meta: Dict[str, Any] = field(default_factory=dict)
