"""
Simulator module for energycov
Exact and Euler–Maruyama simulation of the truncated dynamics, and statistical comparison
"""

from .ou_simulator import (
    SimConfig,
    SimMethod,
    SimulationResult,
    exact_step_covariance,
    euler_stationary_covariance,
    cholesky_with_jitter,
    path_generator,
    simulate,
)
from .comparison import CovarianceComparison, Outlier, compare_covariance

__all__ = [
    "SimConfig",
    "SimMethod",
    "SimulationResult",
    "exact_step_covariance",
    "euler_stationary_covariance",
    "cholesky_with_jitter",
    "path_generator",
    "simulate",
    "CovarianceComparison",
    "Outlier",
    "compare_covariance",
]
