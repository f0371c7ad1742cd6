"""
Tests for the covariance comparison
"""

import numpy as np
import pytest

from src.errors import DimensionMismatchError
from src.simulator import compare_covariance
from src.spectral import SymMatrix


@pytest.fixture
def reference():
    return SymMatrix([[1.0, 0.2, 0.0], [0.2, 0.5, 0.1], [0.0, 0.1, 0.25]])


def test_exact_match(reference):
    result = compare_covariance(reference, SymMatrix(np.full((3, 3), 0.01)), reference)
    assert result.passed
    assert result.max_z == 0.0 and result.fraction_within == 1.0
    assert result.outliers == []


def test_outlier_located(reference):
    P_hat = reference.entries.copy()
    P_hat[0, 2] = P_hat[2, 0] = 0.1
    result = compare_covariance(SymMatrix(P_hat), SymMatrix(np.full((3, 3), 0.01)), reference)
    assert not result.passed
    assert result.worst_entry == (0, 2)
    assert result.max_z == pytest.approx(10.0)
    assert [(o.row, o.col) for o in result.outliers] == [(0, 2)]


def test_pass_fraction(reference):
    P_hat = reference.entries.copy()
    P_hat[0, 2] = P_hat[2, 0] = 0.1
    result = compare_covariance(
        SymMatrix(P_hat), SymMatrix(np.full((3, 3), 0.01)), reference, pass_fraction=0.8
    )
    assert result.passed
    assert result.fraction_within == pytest.approx(5 / 6)


def test_diagonal_relative_error(reference):
    P_hat = reference.entries.copy()
    P_hat[1, 1] = 0.56
    stderr = SymMatrix(np.full((3, 3), 1.0))
    assert compare_covariance(SymMatrix(P_hat), stderr, reference).passed
    result = compare_covariance(SymMatrix(P_hat), stderr, reference, max_diag_rel_error=0.05)
    assert not result.passed
    assert result.max_diag_rel_error == pytest.approx(0.12)


def test_zero_stderr_mismatch(reference):
    P_hat = reference.entries + 1e-3
    result = compare_covariance(SymMatrix(P_hat), SymMatrix(np.zeros((3, 3))), reference)
    assert result.max_z == float("inf") and not result.passed


def test_dimension_mismatch(reference):
    with pytest.raises(DimensionMismatchError):
        compare_covariance(SymMatrix.identity(2), SymMatrix.identity(3), reference)
