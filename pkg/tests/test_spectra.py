"""
Tests for the disk, oscillator and sphere spectra
"""

import math

import numpy as np
import pytest

from src.eigenbases import (
    DiskMode,
    GeometryParams,
    OscillatorMode,
    Parity,
    SphereMode,
    bessel_zero,
    disk_spectrum,
    oscillator_spectrum,
    sphere_degree_for,
    sphere_spectrum,
)
from src.eigenbases.spectra import oscillator_levels
from src.errors import DomainError


class TestDisk:
    def test_first_eigenvalue(self, disk_params):
        spec = disk_spectrum(disk_params, 3)
        assert spec.eigenvalues[0] == pytest.approx(-6.283185962946785, abs=1e-12)

    def test_ordering(self, disk_params):
        spec = disk_spectrum(disk_params, 4)
        assert spec.modes == (
            DiskMode(m=0, k=1),
            DiskMode(m=1, k=1, parity=Parity.COS),
            DiskMode(m=1, k=1, parity=Parity.SIN),
            DiskMode(m=2, k=1, parity=Parity.COS),
        )
        assert spec.eigenvalues[1] == spec.eigenvalues[2]

    def test_matches_brute_force(self, disk_params):
        spec = disk_spectrum(disk_params, 60)
        candidates = []
        for m in range(15):
            for k in range(1, 10):
                j = bessel_zero(m, k)
                candidates.extend([j] * (1 if m == 0 else 2))
        expected = -np.sort(np.array(candidates) ** 2)[:60] - 0.5
        np.testing.assert_allclose(spec.eigenvalues, expected, rtol=1e-14)

    def test_alpha_scaling(self):
        spec = disk_spectrum(GeometryParams(alpha=2.0, gamma=1.0), 1)
        assert spec.eigenvalues[0] == pytest.approx(-(4 * 2.404825557695773 ** 2 + 1.0), rel=1e-14)

    def test_large_cutoff_sorted(self, disk_spec_200):
        assert disk_spec_200.dim == 200
        assert np.all(np.diff(disk_spec_200.eigenvalues) <= 0)
        assert len(set(disk_spec_200.modes)) == 200

    def test_rejects_zero_cutoff(self, disk_params):
        with pytest.raises(DomainError):
            disk_spectrum(disk_params, 0)


class TestOscillator:
    def test_one_dimensional(self):
        spec = oscillator_spectrum(GeometryParams(gamma=1.0, d=1), 3)
        assert spec.eigenvalues.tolist() == [-1.5, -2.5, -3.5]

    def test_degeneracy(self):
        spec = oscillator_spectrum(GeometryParams(gamma=1.0, d=2), 3)
        assert spec.modes == (OscillatorMode(n=(0, 0)), OscillatorMode(n=(0, 1)), OscillatorMode(n=(1, 0)))
        assert spec.eigenvalues[1] == spec.eigenvalues[2] == -3.0

    def test_level_count(self):
        assert sum(len(oscillator_levels(3, k)) for k in range(3)) == 10
        spec = oscillator_spectrum(GeometryParams(gamma=2.0, d=3), 10)
        assert max(mode.degree for mode in spec.modes) == 2

    def test_weak_damping_warns(self, caplog):
        spec = oscillator_spectrum(GeometryParams(gamma=0.5, d=2), 1)
        assert spec.eigenvalues[0] == -1.5
        assert "d/2" in caplog.text


class TestSphere:
    def test_first_degrees(self):
        spec = sphere_spectrum(GeometryParams(alpha=1.0, gamma=0.5), 1)
        assert spec.eigenvalues.tolist() == [-0.5, -2.5, -2.5, -2.5]
        assert spec.modes[1] == SphereMode(l=1, m=-1)

    def test_degree_two(self):
        spec = sphere_spectrum(GeometryParams(alpha=1.0, gamma=0.5), 2)
        assert spec.dim == 9
        assert spec.eigenvalues[-1] == -6.5

    def test_l_zero(self):
        assert sphere_spectrum(GeometryParams(gamma=0.3), 0).eigenvalues.tolist() == [-0.3]

    @pytest.mark.parametrize("cutoff,L", [(1, 0), (2, 1), (4, 1), (5, 2), (9, 2), (10, 3), (16, 3)])
    def test_degree_for(self, cutoff, L):
        assert sphere_degree_for(cutoff) == L
        assert (L + 1) ** 2 >= cutoff > L ** 2
