"""
Tests for the Jacobi eigensolver, operator norm and PSD check
"""

import numpy as np
import pytest

from src.errors import DimensionMismatchError, DomainError
from src.spectral import SymMatrix, eigvalsh_sym, jacobi_eigh, operator_norm_sym, psd_check
from src.spectral.linalg import clip_negative_eigenvalues


def power_iteration_norm(a, iterations=50000):
    v = np.ones(a.shape[0]) / np.sqrt(a.shape[0])
    a2 = a @ a
    for _ in range(iterations):
        w = a2 @ v
        v = w / np.linalg.norm(w)
    return float(np.sqrt(v @ a2 @ v))


class TestJacobi:
    def test_matches_numpy(self, rng):
        a = rng.standard_normal((10, 10))
        a = a + a.T
        w, v = jacobi_eigh(a)
        np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-12)
        np.testing.assert_allclose(v.T @ v, np.eye(10), atol=1e-12)
        np.testing.assert_allclose((v * w) @ v.T, a, atol=1e-11)

    def test_ascending(self, rng):
        a = rng.standard_normal((6, 6))
        w, _ = jacobi_eigh(a + a.T)
        assert np.all(np.diff(w) >= 0)

    def test_one_by_one(self):
        w, v = jacobi_eigh(np.array([[3.0]]))
        assert w.tolist() == [3.0] and v.tolist() == [[1.0]]

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatchError):
            jacobi_eigh(np.zeros((2, 3)))

    def test_diagonal_fast_path(self):
        assert eigvalsh_sym(SymMatrix.diagonal_matrix([3.0, -1.0, 2.0])).tolist() == [-1.0, 2.0, 3.0]


class TestOperatorNorm:
    def test_diagonal(self):
        assert operator_norm_sym(np.diag([3.0, -5.0])) == 5.0

    def test_swap(self):
        assert operator_norm_sym(SymMatrix([[0.0, 1.0], [1.0, 0.0]])) == pytest.approx(1.0, abs=1e-15)

    def test_power_iteration_oracle(self, rng):
        a = rng.standard_normal((8, 8))
        a = a + a.T
        assert operator_norm_sym(a) == pytest.approx(power_iteration_norm(a), rel=1e-10)


class TestPsdCheck:
    def test_identity(self):
        result = psd_check(SymMatrix.identity(3), 0.0)
        assert result.is_psd and result.min_eigenvalue == 1.0

    def test_indefinite(self):
        result = psd_check(np.diag([1.0, -1.0]), 1e-10)
        assert not result.is_psd and result.min_eigenvalue == -1.0

    def test_negative_tolerance(self):
        with pytest.raises(DomainError):
            psd_check(SymMatrix.identity(2), -1.0)


def test_clip_negative_eigenvalues():
    clipped, removed = clip_negative_eigenvalues(SymMatrix([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(clipped.entries, [[0.5, 0.5], [0.5, 0.5]], atol=1e-15)
    assert removed == pytest.approx(1.0)
