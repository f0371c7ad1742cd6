"""
Mode indices and geometry parameters

Each geometry labels its eigenfunctions differently; all labels are frozen pydantic
models so they hash, compare and serialize the same way.
"""

from enum import Enum
from typing import Annotated, Any, Dict, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Geometry(str, Enum):
    DISK = "disk"
    OSCILLATOR = "oscillator"
    SPHERE = "sphere"


class Parity(str, Enum):
    COS = "cos"
    SIN = "sin"


class DiskMode(BaseModel):
    """Dirichlet Laplacian mode J_m(j_{m,k} r)·{cos, sin}(mθ) on the unit disk."""

    model_config = ConfigDict(frozen=True)

    geometry: Literal["disk"] = "disk"
    m: int = Field(..., ge=0, le=60)
    k: int = Field(..., ge=1, le=100)
    parity: Parity = Parity.COS

    @model_validator(mode="after")
    def _check_parity(self):
        if self.parity == Parity.SIN and self.m < 1:
            raise ValueError("disk parity 'sin' requires m >= 1")
        return self

    def indices(self) -> Dict[str, Any]:
        return {"m": self.m, "k": self.k, "parity": self.parity.value}

    def label(self) -> str:
        if self.m == 0:
            return f"({self.m},{self.k})"
        return f"({self.m},{self.k},{self.parity.value})"


class OscillatorMode(BaseModel):
    """Multi-index n of a d-dimensional Hermite function."""

    model_config = ConfigDict(frozen=True)

    geometry: Literal["oscillator"] = "oscillator"
    n: Tuple[int, ...]

    @field_validator("n")
    @classmethod
    def _check_n(cls, n):
        if not 1 <= len(n) <= 3:
            raise ValueError(f"oscillator dimension must be 1, 2 or 3, got {len(n)}")
        if any(v < 0 for v in n):
            raise ValueError("oscillator multi-index entries must be non-negative")
        return n

    @property
    def degree(self) -> int:
        return sum(self.n)

    def indices(self) -> Dict[str, Any]:
        return {"n": list(self.n)}

    def label(self) -> str:
        return "(" + ",".join(str(v) for v in self.n) + ")"


class SphereMode(BaseModel):
    """Real spherical harmonic Y_l^m."""

    model_config = ConfigDict(frozen=True)

    geometry: Literal["sphere"] = "sphere"
    l: int = Field(..., ge=0)
    m: int

    @model_validator(mode="after")
    def _check_order(self):
        if abs(self.m) > self.l:
            raise ValueError(f"sphere mode requires |m| <= l, got l={self.l}, m={self.m}")
        return self

    def indices(self) -> Dict[str, Any]:
        return {"l": self.l, "m": self.m}

    def label(self) -> str:
        return f"({self.l},{self.m})"


ModeIndex = Annotated[
    Union[DiskMode, OscillatorMode, SphereMode], Field(discriminator="geometry")
]


class GeometryParams(BaseModel):
    """
    Physical parameters of a geometry.

    alpha is the diffusion coefficient (unused by the oscillator), gamma the uniform
    dissipation rate, d the oscillator dimension.
    """

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(1.0, gt=0.0)
    gamma: float = Field(0.5, gt=0.0)
    d: int = Field(1, ge=1, le=3)
