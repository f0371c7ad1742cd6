"""
Noise module for energycov
Noise specifications and their projection onto eigenbases
"""

from .noise_models import (
    NoiseKind,
    NoiseSpec,
    WhiteNoise,
    DiagonalNoise,
    KernelNoise,
    GaussianKernelNoise,
    TableKernelNoise,
    ZernikeNoise,
    is_kernel_noise,
)
from .noise_projector import (
    NoiseProjector,
    BlockStructureReport,
    project_noise,
    block_structure_report,
    read_kernel_table,
)

__all__ = [
    "NoiseKind",
    "NoiseSpec",
    "WhiteNoise",
    "DiagonalNoise",
    "KernelNoise",
    "GaussianKernelNoise",
    "TableKernelNoise",
    "ZernikeNoise",
    "is_kernel_noise",
    "NoiseProjector",
    "BlockStructureReport",
    "project_noise",
    "block_structure_report",
    "read_kernel_table",
]
