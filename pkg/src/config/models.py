"""
Run configuration models

RunConfig mirrors the flat dotted keys of a config file: top-level keys map to its own
fields, "section.key" to the fields of the nested section models.
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..eigenbases.modes import Geometry, GeometryParams
from ..noise.noise_models import (
    DiagonalNoise,
    GaussianKernelNoise,
    NoiseKind,
    TableKernelNoise,
    WhiteNoise,
    ZernikeNoise,
)
from ..noise.noise_projector import MAX_KERNEL_MODES
from ..simulator.ou_simulator import SimConfig, SimMethod


def _split_list(value):
    if isinstance(value, str):
        parts = [p.strip() for p in value.split(",")]
        return [p for p in parts if p]
    return value


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class QuadratureOrders(BaseModel):
    model_config = ConfigDict(extra="forbid")

    radial: int = Field(64, ge=1)
    angular: int = Field(128, ge=1)
    hermite: int = Field(80, ge=1)
    polar: int = Field(64, ge=1)


class NoiseConfig(BaseModel):
    """noise.* keys; to_spec() builds the matching noise specification."""

    model_config = ConfigDict(extra="forbid")

    kind: NoiseKind = NoiseKind.WHITE
    sigma2: float = Field(1.0, gt=0.0)
    c: float = Field(1.0, gt=0.0)
    p: float = Field(1.0, ge=0.0)
    lengthscale: float = Field(0.5, gt=0.0)
    values: Optional[List[float]] = None
    table: Optional[str] = None
    zernike_order: int = Field(4, ge=0, le=40)
    clip: bool = False

    @field_validator("values", mode="before")
    @classmethod
    def _parse_values(cls, value):
        return _split_list(value)

    @model_validator(mode="after")
    def _check_kind(self):
        if self.kind == NoiseKind.KERNEL:
            raise ValueError(
                "noise.kind: kernel needs a Python callable, use kernel-gaussian or kernel-custom-table"
            )
        if self.kind == NoiseKind.KERNEL_TABLE and not self.table:
            raise ValueError("noise.table: required for noise.kind = kernel-custom-table")
        if self.values is not None and any(not v > 0.0 for v in self.values):
            raise ValueError("noise.values: diagonal noise entries must be positive")
        return self

    @property
    def is_kernel(self) -> bool:
        return self.kind in (NoiseKind.KERNEL_GAUSSIAN, NoiseKind.KERNEL_TABLE)

    def to_spec(self):
        if self.kind == NoiseKind.WHITE:
            return WhiteNoise(sigma2=self.sigma2)
        if self.kind == NoiseKind.DIAGONAL:
            return DiagonalNoise(values=self.values, c=self.c, p=self.p)
        if self.kind == NoiseKind.KERNEL_GAUSSIAN:
            return GaussianKernelNoise(sigma2=self.sigma2, lengthscale=self.lengthscale)
        if self.kind == NoiseKind.KERNEL_TABLE:
            return TableKernelNoise(table=self.table)
        return ZernikeNoise(order=self.zernike_order, c=self.c, p=self.p)


class SimSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dt: float = Field(0.1, gt=0.0)
    steps: int = Field(50_000, ge=1)
    burn_in: Optional[int] = Field(None, ge=0)
    paths: int = Field(64, ge=1)
    seed: int = Field(20240601, ge=0, le=2**64 - 1)
    method: SimMethod = SimMethod.EXACT
    max_diag_rel_error: Optional[float] = Field(0.05, gt=0.0)
    diagnostics: bool = False

    @field_validator("burn_in", mode="before")
    @classmethod
    def _parse_burn_in(cls, value):
        if isinstance(value, str) and value.strip().lower() == "auto":
            return None
        return value

    @field_validator("max_diag_rel_error", mode="before")
    @classmethod
    def _parse_tolerance(cls, value):
        if isinstance(value, str) and value.strip().lower() in ("none", "off"):
            return None
        return value

    @model_validator(mode="after")
    def _check_burn_in(self):
        if self.burn_in is not None and self.burn_in >= self.steps:
            raise ValueError(f"sim.burn_in: must be smaller than sim.steps ({self.steps}), got {self.burn_in}")
        return self

    def to_sim_config(self) -> SimConfig:
        return SimConfig(
            dt=self.dt,
            n_steps=self.steps,
            burn_in=self.burn_in,
            n_paths=self.paths,
            seed=self.seed,
            method=self.method,
        )


class VerifySection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    reference_cutoff: int = Field(200, ge=2)
    sweep: List[int] = Field(default_factory=lambda: [10, 20, 40, 80])
    samples: int = Field(1000, ge=1)
    slope_tolerance: float = Field(0.15, ge=0.0)

    @field_validator("sweep", mode="before")
    @classmethod
    def _parse_sweep(cls, value):
        return _split_list(value)

    @model_validator(mode="after")
    def _check_sweep(self):
        if not self.sweep:
            raise ValueError("verify.sweep: needs at least one truncation")
        if any(n < 1 for n in self.sweep):
            raise ValueError("verify.sweep: truncations must be >= 1")
        if max(self.sweep) >= self.reference_cutoff:
            raise ValueError(
                f"verify.reference_cutoff: must exceed every sweep value "
                f"(max {max(self.sweep)}), got {self.reference_cutoff}"
            )
        return self


class OutputSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    path: str = "-"
    format: OutputFormat = OutputFormat.JSON
    field_points: int = Field(0, ge=0)


class RunConfig(BaseModel):
    """Complete, validated configuration of one run."""

    model_config = ConfigDict(extra="forbid")

    geometry: Geometry = Geometry.DISK
    alpha: float = Field(1.0, gt=0.0)
    gamma: float = Field(0.5, gt=0.0)
    d: int = Field(1, ge=1, le=3)
    cutoff: int = Field(8, ge=1)
    L: Optional[int] = Field(None, ge=0)
    quad: QuadratureOrders = Field(default_factory=QuadratureOrders)
    noise: NoiseConfig = Field(default_factory=NoiseConfig)
    sim: SimSection = Field(default_factory=SimSection)
    verify: VerifySection = Field(default_factory=VerifySection)
    output: OutputSection = Field(default_factory=OutputSection)

    @model_validator(mode="after")
    def _check_cross_fields(self):
        if self.L is not None:
            if self.geometry != Geometry.SPHERE:
                raise ValueError(f"L: only used by the sphere geometry, not {self.geometry.value}")
            if "cutoff" in self.model_fields_set and self.cutoff != (self.L + 1) ** 2:
                raise ValueError(
                    f"cutoff: must equal (L+1)² = {(self.L + 1) ** 2} when L = {self.L}, got {self.cutoff}"
                )
        if self.noise.kind == NoiseKind.ZERNIKE and self.geometry != Geometry.DISK:
            raise ValueError("noise.kind: zernike noise is defined on the disk only")
        if self.noise.is_kernel and self.mode_count > MAX_KERNEL_MODES:
            raise ValueError(
                f"cutoff: kernel noise is limited to {MAX_KERNEL_MODES} modes, got {self.mode_count}"
            )
        if self.noise.kind == NoiseKind.DIAGONAL and self.noise.values is not None:
            if len(self.noise.values) < self.mode_count:
                raise ValueError(
                    f"noise.values: {len(self.noise.values)} values for {self.mode_count} modes"
                )
        return self

    @property
    def mode_count(self) -> int:
        if self.geometry == Geometry.SPHERE and self.L is not None:
            return (self.L + 1) ** 2
        return self.cutoff

    def params(self) -> GeometryParams:
        return GeometryParams(alpha=self.alpha, gamma=self.gamma, d=self.d)
