"""
Tests for eigenfunctions, Basis objects, Gram matrices and covariance fields
"""

import math

import numpy as np
import pytest

from src.eigenbases import (
    DiskBasis,
    DiskMode,
    Geometry,
    GeometryParams,
    OscillatorMode,
    Parity,
    SphereMode,
    basis_for_spectrum,
    build_basis,
    covariance_field,
    disk_eigenfunction,
    gram_defect,
    gram_matrix,
    oscillator_eigenfunction,
    sphere_eigenfunction,
)
from src.errors import DimensionMismatchError, DomainError, GeometryMismatchError
from src.quadrature import disk_grid, sphere_grid
from src.spectral import SymMatrix, solve_spectral_lyapunov


class TestEigenfunctions:
    def test_disk_boundary_zero(self):
        mode = DiskMode(m=2, k=3, parity=Parity.SIN)
        values = disk_eigenfunction(mode, np.ones(5), np.linspace(0, 6, 5))
        np.testing.assert_allclose(values, 0.0, atol=1e-13)

    def test_disk_radial_mode_constant_in_theta(self):
        mode = DiskMode(m=0, k=2)
        a = disk_eigenfunction(mode, 0.3, 0.0)
        b = disk_eigenfunction(mode, 0.3, 2.0)
        assert a == pytest.approx(b, rel=1e-15)

    def test_disk_radius_domain(self):
        with pytest.raises(DomainError):
            disk_eigenfunction(DiskMode(m=0, k=1), 1.5, 0.0)

    def test_oscillator_ground_state(self):
        value = oscillator_eigenfunction(OscillatorMode(n=(0, 0)), [0.0, 0.0])
        assert value == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-15)

    def test_oscillator_points(self):
        pts = np.array([[0.5, -1.0], [2.0, 0.0]])
        values = oscillator_eigenfunction(OscillatorMode(n=(1, 0)), pts)
        assert values.shape == (2,)
        scaled = oscillator_eigenfunction(OscillatorMode(n=(1, 0)), pts, scaled=True)
        np.testing.assert_allclose(scaled * np.exp(-0.5 * np.sum(pts ** 2, axis=1)), values, rtol=1e-14)

    def test_oscillator_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            oscillator_eigenfunction(OscillatorMode(n=(1, 0)), [0.0, 0.0, 0.0])

    def test_sphere_constant(self):
        assert sphere_eigenfunction(SphereMode(l=0, m=0), 1.0, 2.0) == pytest.approx(1 / math.sqrt(4 * math.pi))

    def test_sphere_dipole(self):
        theta = np.array([0.0, 1.0, math.pi])
        expected = math.sqrt(3 / (4 * math.pi)) * np.cos(theta)
        np.testing.assert_allclose(sphere_eigenfunction(SphereMode(l=1, m=0), theta, 0.0), expected, atol=1e-15)


class TestGram:
    def test_disk_single_mode(self):
        basis = build_basis(Geometry.DISK, GeometryParams(), 1)
        assert gram_matrix(basis, basis.default_grid()).entries[0, 0] == pytest.approx(1.0, abs=1e-8)

    def test_disk_cos_sin_pair(self):
        basis = build_basis(Geometry.DISK, GeometryParams(), 3)
        G = gram_matrix(basis, disk_grid(32, 16)).entries
        assert abs(G[1, 2]) <= 1e-12

    def test_disk_thirty_modes(self):
        basis = build_basis(Geometry.DISK, GeometryParams(), 30)
        assert gram_defect(gram_matrix(basis, basis.default_grid())) < 1e-8

    def test_oscillator_two_dimensional(self):
        params = GeometryParams(gamma=1.5, d=2)
        basis = build_basis(Geometry.OSCILLATOR, params, 21)
        assert max(mode.degree for mode in basis.modes) == 5
        assert gram_defect(gram_matrix(basis, basis.default_grid())) < 1e-8

    def test_sphere_degree_six(self):
        basis = build_basis(Geometry.SPHERE, GeometryParams(), 49, L=6)
        assert basis.dim == 49
        assert gram_defect(gram_matrix(basis, basis.default_grid())) < 1e-8

    def test_geometry_mismatch(self):
        basis = build_basis(Geometry.DISK, GeometryParams(), 3)
        with pytest.raises(GeometryMismatchError):
            gram_matrix(basis, sphere_grid(4, 8))


class TestBasis:
    def test_sphere_cutoff_truncates(self):
        basis = build_basis(Geometry.SPHERE, GeometryParams(), 6)
        assert basis.dim == 6
        assert basis.modes[-1] == SphereMode(l=2, m=-2)

    def test_truncate_keeps_type(self):
        basis = build_basis(Geometry.DISK, GeometryParams(), 10).truncate(4)
        assert isinstance(basis, DiskBasis) and basis.dim == 4

    def test_basis_for_spectrum(self):
        basis = build_basis(Geometry.OSCILLATOR, GeometryParams(gamma=2.0), 5)
        assert type(basis_for_spectrum(basis.spectrum)) is type(basis)

    def test_rejects_foreign_modes(self):
        sphere = build_basis(Geometry.SPHERE, GeometryParams(), 4)
        with pytest.raises(GeometryMismatchError):
            DiskBasis(sphere.spectrum)

    def test_evaluate_shape(self):
        basis = build_basis(Geometry.DISK, GeometryParams(), 7)
        grid = disk_grid(4, 8)
        assert basis.evaluate(grid.coords).shape == (32, 7)


class TestCovarianceField:
    def test_white_noise_disk_center(self):
        basis = build_basis(Geometry.DISK, GeometryParams(), 5)
        P = solve_spectral_lyapunov(basis.spectrum, SymMatrix.identity(5)).P
        coords = {"r": np.array([0.0]), "theta": np.array([0.0])}
        phi = basis.evaluate(coords)[0]
        expected = float(np.sum(np.diag(P.entries) * phi ** 2))
        assert covariance_field(basis, P, coords)[0] == pytest.approx(expected, rel=1e-14)

    def test_non_negative_profile(self, make_psd):
        basis = build_basis(Geometry.SPHERE, GeometryParams(), 9)
        P = solve_spectral_lyapunov(basis.spectrum, make_psd(9, rank=2)).P
        _, coords = basis.profile(25)
        values = covariance_field(basis, P, coords)
        assert np.all(values >= -1e-12 * np.max(np.abs(P.entries)))

    def test_sphere_white_noise_uniform(self):
        basis = build_basis(Geometry.SPHERE, GeometryParams(), 4, L=1)
        P = SymMatrix.identity(4)
        _, coords = basis.profile(7)
        values = covariance_field(basis, P, coords)
        np.testing.assert_allclose(values, 4 / (4 * math.pi), rtol=1e-13)

    def test_dimension_mismatch(self):
        basis = build_basis(Geometry.DISK, GeometryParams(), 3)
        with pytest.raises(DimensionMismatchError):
            covariance_field(basis, SymMatrix.identity(2), {"r": [0.5], "theta": [0.0]})
