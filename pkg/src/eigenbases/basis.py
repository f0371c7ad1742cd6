"""
Normalized eigenfunctions and Basis objects

A Basis couples a geometry's spectrum with the evaluation of its eigenfunctions, so
that quadrature projections (Gram matrices, noise) and spectral synthesis of the
covariance field share one code path.
"""

import logging
import math
from typing import Dict, Optional, Tuple

import numpy as np

from ..errors import DimensionMismatchError, DomainError, GeometryMismatchError
from ..quadrature import QuadratureGrid, disk_grid, oscillator_grid, sphere_grid
from ..spectral.types import DissipativeSpectrum, SymMatrix
from .modes import DiskMode, Geometry, GeometryParams, OscillatorMode, Parity, SphereMode
from .spectra import disk_spectrum, oscillator_spectrum, sphere_degree_for, sphere_spectrum
from .special_functions import (
    associated_legendre_normalized,
    bessel_j,
    bessel_zero,
    hermite_function_table,
)

logger = logging.getLogger(__name__)

PROFILE_HALF_WIDTH = 4.0


def _disk_radial_norm(m: int, j: float) -> float:
    edge = abs(bessel_j(m + 1, j))
    if m == 0:
        return 1.0 / (math.sqrt(math.pi) * edge)
    return math.sqrt(2.0 / math.pi) / edge


def _angular(m: int, parity: Parity, theta: np.ndarray) -> np.ndarray:
    if m == 0:
        return np.ones_like(theta)
    return np.cos(m * theta) if parity == Parity.COS else np.sin(m * theta)


def disk_eigenfunction(mode: DiskMode, r, theta):
    """
    c·J_m(j_{m,k} r)·{cos, sin}(mθ), normalized on the measure r dr dθ.

    Uses ∫₀¹ J_m(j r)² r dr = J_{m+1}(j)²/2.
    """
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any(r < 0.0) or np.any(r > 1.0):
        raise DomainError("disk radius must lie in [0, 1]")
    j = bessel_zero(mode.m, mode.k)
    out = _disk_radial_norm(mode.m, j) * bessel_j(mode.m, j * r) * _angular(mode.m, mode.parity, theta)
    return float(out) if np.ndim(out) == 0 else out


def oscillator_eigenfunction(mode: OscillatorMode, x, scaled: bool = False):
    """
    Product of orthonormal Hermite functions Π ψ_{n_i}(x_i).

    Args:
        mode: Multi-index of length d
        x: Point(s) of shape (d,) or (n_points, d)
        scaled: Leave out e^{-|x|²/2} (for Gauss–Hermite weights)
    """
    pts = np.asarray(x, dtype=float)
    single = pts.ndim <= 1
    pts = pts.reshape(1, -1) if single else pts
    d = len(mode.n)
    if pts.shape[-1] != d:
        raise DimensionMismatchError(f"oscillator mode has d={d}, points have {pts.shape[-1]} coordinates")
    out = np.ones(pts.shape[0])
    for axis, n in enumerate(mode.n):
        out = out * hermite_function_table(n, pts[:, axis], scaled)[n]
    return float(out[0]) if single else out


def _sphere_angular(m: int, phi: np.ndarray) -> np.ndarray:
    if m == 0:
        return np.ones_like(phi)
    if m > 0:
        return math.sqrt(2.0) * np.cos(m * phi)
    return math.sqrt(2.0) * np.sin(-m * phi)


def sphere_eigenfunction(mode: SphereMode, theta, phi):
    """Real orthonormal spherical harmonic Y_l^m; cos(mφ) for m > 0, sin(|m|φ) for m < 0."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if np.any(theta < 0.0) or np.any(theta > math.pi):
        raise DomainError("polar angle theta must lie in [0, pi]")
    table = associated_legendre_normalized(mode.l, np.cos(theta))
    out = table[mode.l, abs(mode.m)] * _sphere_angular(mode.m, phi)
    return float(out) if np.ndim(out) == 0 else out


class Basis:
    """Eigenbasis of one geometry: its spectrum plus eigenfunction evaluation."""

    geometry: Geometry

    def __init__(self, spectrum: DissipativeSpectrum):
        for mode in spectrum.modes:
            if getattr(mode, "geometry", None) != self.geometry.value:
                raise GeometryMismatchError(
                    f"{type(self).__name__} cannot hold mode {mode!r}"
                )
        self.spectrum = spectrum

    @property
    def modes(self) -> Tuple:
        return self.spectrum.modes

    @property
    def dim(self) -> int:
        return self.spectrum.dim

    def truncate(self, n: int) -> "Basis":
        return type(self)(self.spectrum.truncate(n))

    def evaluate(self, coords: Dict[str, np.ndarray], scaled: bool = False) -> np.ndarray:
        """Eigenfunction values as an (n_points, n_modes) matrix."""
        raise NotImplementedError

    def default_grid(self, radial: int = 64, angular: int = 128, hermite: int = 80, polar: int = 64) -> QuadratureGrid:
        raise NotImplementedError

    def profile(self, n_points: int) -> Tuple[np.ndarray, Dict[str, np.ndarray]]:
        """Path through the domain used for variance profiles: (parameter, coords)."""
        raise NotImplementedError


class DiskBasis(Basis):
    geometry = Geometry.DISK

    def evaluate(self, coords, scaled=False):
        r = np.asarray(coords["r"], dtype=float)
        theta = np.asarray(coords["theta"], dtype=float)
        if np.any(r < 0.0) or np.any(r > 1.0):
            raise DomainError("disk radius must lie in [0, 1]")
        out = np.empty((r.shape[0], self.dim))
        radial_cache: Dict[Tuple[int, int], np.ndarray] = {}
        for col, mode in enumerate(self.modes):
            key = (mode.m, mode.k)
            if key not in radial_cache:
                j = bessel_zero(mode.m, mode.k)
                radial_cache[key] = _disk_radial_norm(mode.m, j) * bessel_j(mode.m, j * r)
            out[:, col] = radial_cache[key] * _angular(mode.m, mode.parity, theta)
        return out

    def default_grid(self, radial=64, angular=128, hermite=80, polar=64):
        return disk_grid(radial, angular)

    def profile(self, n_points):
        r = np.linspace(0.0, 1.0, n_points)
        return r, {"r": r, "theta": np.zeros_like(r)}


class OscillatorBasis(Basis):
    geometry = Geometry.OSCILLATOR

    @property
    def d(self) -> int:
        return len(self.modes[0].n)

    def evaluate(self, coords, scaled=False):
        axes = [np.asarray(coords[f"x{i}"], dtype=float) for i in range(self.d)]
        n_max = max(max(mode.n) for mode in self.modes)
        tables = [hermite_function_table(n_max, axis, scaled) for axis in axes]
        out = np.empty((axes[0].shape[0], self.dim))
        for col, mode in enumerate(self.modes):
            values = tables[0][mode.n[0]].copy()
            for axis in range(1, self.d):
                values *= tables[axis][mode.n[axis]]
            out[:, col] = values
        return out

    def default_grid(self, radial=64, angular=128, hermite=80, polar=64):
        return oscillator_grid(hermite, self.d)

    def profile(self, n_points):
        s = np.linspace(-PROFILE_HALF_WIDTH, PROFILE_HALF_WIDTH, n_points)
        coords = {f"x{i}": (s if i == 0 else np.zeros_like(s)) for i in range(self.d)}
        return s, coords


class SphereBasis(Basis):
    geometry = Geometry.SPHERE

    def evaluate(self, coords, scaled=False):
        theta = np.asarray(coords["theta"], dtype=float)
        phi = np.asarray(coords["phi"], dtype=float)
        if np.any(theta < 0.0) or np.any(theta > math.pi):
            raise DomainError("polar angle theta must lie in [0, pi]")
        l_max = max(mode.l for mode in self.modes)
        table = associated_legendre_normalized(l_max, np.cos(theta))
        out = np.empty((theta.shape[0], self.dim))
        for col, mode in enumerate(self.modes):
            out[:, col] = table[mode.l, abs(mode.m)] * _sphere_angular(mode.m, phi)
        return out

    def default_grid(self, radial=64, angular=128, hermite=80, polar=64):
        return sphere_grid(polar, angular)

    def profile(self, n_points):
        theta = np.linspace(0.0, math.pi, n_points)
        return theta, {"theta": theta, "phi": np.zeros_like(theta)}


_BASIS_TYPES = {
    Geometry.DISK: DiskBasis,
    Geometry.OSCILLATOR: OscillatorBasis,
    Geometry.SPHERE: SphereBasis,
}


def basis_for_spectrum(spectrum: DissipativeSpectrum) -> Basis:
    geometry = Geometry(getattr(spectrum.modes[0], "geometry", ""))
    return _BASIS_TYPES[geometry](spectrum)


def build_basis(
    geometry: Geometry, params: GeometryParams, cutoff: int, L: Optional[int] = None
) -> Basis:
    """
    Spectrum and basis for a geometry.

    Args:
        geometry: disk, oscillator or sphere
        params: alpha, gamma, d
        cutoff: Mode count (disk, oscillator; sphere when L is None)
        L: Sphere degree; all (L + 1)² modes are kept when given

    Returns:
        Basis of the requested geometry
    """
    geometry = Geometry(geometry)
    if geometry == Geometry.DISK:
        spectrum = disk_spectrum(params, cutoff)
    elif geometry == Geometry.OSCILLATOR:
        spectrum = oscillator_spectrum(params, cutoff)
    elif L is not None:
        spectrum = sphere_spectrum(params, L)
    else:
        spectrum = sphere_spectrum(params, sphere_degree_for(cutoff)).truncate(cutoff)
    return _BASIS_TYPES[geometry](spectrum)


def _check_grid(basis: Basis, grid: QuadratureGrid):
    if grid.geometry != basis.geometry.value:
        raise GeometryMismatchError(
            f"basis geometry {basis.geometry.value} does not match grid geometry {grid.geometry}"
        )


def gram_matrix(basis: Basis, grid: QuadratureGrid) -> SymMatrix:
    """Quadrature inner products ⟨φ_i, φ_j⟩ over the geometry's measure."""
    _check_grid(basis, grid)
    phi = basis.evaluate(grid.coords, scaled=grid.scaled)
    return SymMatrix((phi * grid.weights[:, None]).T @ phi)


def gram_defect(gram: SymMatrix) -> float:
    """max |G - I|"""
    return float(np.max(np.abs(gram.entries - np.eye(gram.dim))))


def covariance_field(basis: Basis, P: SymMatrix, coords: Dict[str, np.ndarray]) -> np.ndarray:
    """
    Pointwise variance Σ_jk P_jk φ_j(x) φ_k(x) of the truncated field.

    Args:
        basis: Basis the covariance is expressed in
        P: Energy covariance
        coords: Native coordinates of the evaluation points

    Returns:
        Variance at every point
    """
    if P.dim != basis.dim:
        raise DimensionMismatchError(f"P dimension {P.dim} does not match {basis.dim} modes")
    phi = basis.evaluate(coords)
    return np.einsum("ij,jk,ik->i", phi, P.entries, phi)
