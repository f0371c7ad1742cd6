"""
Declarative noise specifications

Each variant describes the spatial covariance of the injected noise; the projector turns
it into the matrix Q_N in a given eigenbasis.
"""

from enum import Enum
from typing import Annotated, Any, Callable, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..errors import DimensionMismatchError


class NoiseKind(str, Enum):
    WHITE = "white"
    DIAGONAL = "diagonal"
    KERNEL = "kernel"
    KERNEL_GAUSSIAN = "kernel-gaussian"
    KERNEL_TABLE = "kernel-custom-table"
    ZERNIKE = "zernike"


class WhiteNoise(BaseModel):
    """Q = σ² I in any orthonormal basis."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["white"] = "white"
    sigma2: float = Field(1.0, gt=0.0)


class DiagonalNoise(BaseModel):
    """
    Uncorrelated mode noise.

    Explicit per-mode values, or the decay law q_k = c·(1 + |λ_k|)^{-p}.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["diagonal"] = "diagonal"
    values: Optional[List[float]] = None
    c: float = Field(1.0, gt=0.0)
    p: float = Field(1.0, ge=0.0)

    @field_validator("values")
    @classmethod
    def _check_values(cls, values):
        if values is not None:
            if not values:
                raise ValueError("explicit diagonal must not be empty")
            if any(not v > 0.0 for v in values):
                raise ValueError("diagonal noise entries must be positive")
        return values

    def diagonal(self, eigenvalues: np.ndarray) -> np.ndarray:
        """Diagonal of Q for the given (leading) eigenvalues."""
        n = eigenvalues.shape[0]
        if self.values is not None:
            if len(self.values) < n:
                raise DimensionMismatchError(
                    f"diagonal noise lists {len(self.values)} values but the basis has {n} modes"
                )
            return np.asarray(self.values[:n], dtype=float)
        return self.c * (1.0 + np.abs(eigenvalues)) ** (-self.p)


class KernelNoise(BaseModel):
    """
    Pointwise covariance kernel K(x, y).

    kernel maps two (a, dim) and (b, dim) arrays of Euclidean points to an (a, b) array.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: Literal["kernel"] = "kernel"
    kernel: Callable[[np.ndarray, np.ndarray], np.ndarray]
    label: str = "custom"

    def evaluate(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.asarray(self.kernel(x, y), dtype=float)


class GaussianKernelNoise(BaseModel):
    """
    Isotropic kernel σ² exp(-dist²/ℓ²).

    dist is Euclidean on the disk and the oscillator domain, chordal on the sphere; both
    are functions of the rotation-invariant separation only.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["kernel-gaussian"] = "kernel-gaussian"
    sigma2: float = Field(1.0, gt=0.0)
    lengthscale: float = Field(0.5, gt=0.0)

    def evaluate(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        d2 = np.zeros((x.shape[0], y.shape[0]))
        for axis in range(x.shape[1]):
            diff = x[:, axis, None] - y[None, :, axis]
            d2 += diff * diff
        return self.sigma2 * np.exp(-d2 / self.lengthscale ** 2)


class TableKernelNoise(BaseModel):
    """Kernel given as a CSV table of node-pair values (columns i, j, value)."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["kernel-custom-table"] = "kernel-custom-table"
    table: str = Field(..., min_length=1)


class ZernikeNoise(BaseModel):
    """
    Finite-rank disk noise K(x, y) = Σ_{n <= order} Σ_m a_n Z_n^m(x) Z_n^m(y),
    with a_n = c·(1 + n)^{-p}.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["zernike"] = "zernike"
    order: int = Field(4, ge=0, le=40)
    c: float = Field(1.0, gt=0.0)
    p: float = Field(1.0, ge=0.0)

    def terms(self):
        """(n, m, a_n) for every Zernike function in the expansion."""
        out = []
        for n in range(self.order + 1):
            a = self.c * (1.0 + n) ** (-self.p)
            for m in range(-n, n + 1, 2):
                out.append((n, m, a))
        return out


NoiseSpec = Annotated[
    Union[WhiteNoise, DiagonalNoise, KernelNoise, GaussianKernelNoise, TableKernelNoise, ZernikeNoise],
    Field(discriminator="kind"),
]


def is_kernel_noise(noise: Any) -> bool:
    return isinstance(noise, (KernelNoise, GaussianKernelNoise, TableKernelNoise))
