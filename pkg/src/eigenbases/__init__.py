"""
Eigenbases module for energycov
Spectra, special functions and normalized eigenfunctions of the disk, the damped
harmonic oscillator and the sphere
"""

from .modes import (
    Geometry,
    Parity,
    DiskMode,
    OscillatorMode,
    SphereMode,
    ModeIndex,
    GeometryParams,
)
from .special_functions import (
    bessel_j,
    bessel_zero,
    hermite_function,
    hermite_function_table,
    zernike_radial,
    zernike_function,
    associated_legendre_normalized,
)
from .spectra import disk_spectrum, oscillator_spectrum, sphere_spectrum, sphere_degree_for
from .basis import (
    Basis,
    DiskBasis,
    OscillatorBasis,
    SphereBasis,
    build_basis,
    basis_for_spectrum,
    disk_eigenfunction,
    oscillator_eigenfunction,
    sphere_eigenfunction,
    gram_matrix,
    gram_defect,
    covariance_field,
)

__all__ = [
    "Geometry",
    "Parity",
    "DiskMode",
    "OscillatorMode",
    "SphereMode",
    "ModeIndex",
    "GeometryParams",
    "bessel_j",
    "bessel_zero",
    "hermite_function",
    "hermite_function_table",
    "zernike_radial",
    "zernike_function",
    "associated_legendre_normalized",
    "disk_spectrum",
    "oscillator_spectrum",
    "sphere_spectrum",
    "sphere_degree_for",
    "Basis",
    "DiskBasis",
    "OscillatorBasis",
    "SphereBasis",
    "build_basis",
    "basis_for_spectrum",
    "disk_eigenfunction",
    "oscillator_eigenfunction",
    "sphere_eigenfunction",
    "gram_matrix",
    "gram_defect",
    "covariance_field",
]
