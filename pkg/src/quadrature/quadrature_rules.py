"""
Deterministic quadrature rules and per-geometry tensor grids

Rules are cached; identical orders return the same read-only arrays.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np

from ..errors import ConvergenceError, DomainError
from ..spectral.linalg import jacobi_eigh

logger = logging.getLogger(__name__)

NEWTON_TOL = 1e-15
MAX_NEWTON_ITERATIONS = 100


class RuleDomain(str, Enum):
    INTERVAL = "interval"
    PERIODIC = "periodic"
    GAUSSIAN_WEIGHT = "real-line-gaussian-weight"


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class QuadratureRule:
    """
    One-dimensional rule: Σ w_i f(x_i) approximates an integral over its domain.

    interval rules live on [-1, 1] (or [0, 1] after map_to_radial), periodic rules on
    [0, 2π), Gaussian-weight rules integrate f(x)·e^{-x²} over the real line.
    """

    nodes: np.ndarray
    weights: np.ndarray
    domain: RuleDomain

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float).reshape(-1)
        weights = np.array(self.weights, dtype=float).reshape(-1)
        if nodes.shape != weights.shape:
            raise DomainError(f"{nodes.shape[0]} nodes but {weights.shape[0]} weights")
        if np.any(weights <= 0.0):
            raise DomainError("quadrature weights must be positive")
        object.__setattr__(self, "nodes", _frozen(nodes))
        object.__setattr__(self, "weights", _frozen(weights))
        object.__setattr__(self, "domain", RuleDomain(self.domain))

    @property
    def size(self) -> int:
        return self.nodes.shape[0]

    def integrate(self, f) -> float:
        """Apply the rule to a vectorized callable."""
        return float(np.sum(self.weights * f(self.nodes)))


def _check_order(n: int):
    if n < 1:
        raise DomainError(f"quadrature order must be >= 1, got {n}")


def _legendre_with_derivative(n: int, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    if n == 0:
        return p_prev, np.zeros_like(x)
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


@lru_cache(maxsize=64)
def gauss_legendre_rule(n: int) -> QuadratureRule:
    """
    n-point Gauss–Legendre rule on [-1, 1], exact for degree <= 2n-1.

    Nodes come from Newton iteration on P_n started at cos(π(i - 1/4)/(n + 1/2)).
    """
    _check_order(n)
    i = np.arange(1, n + 1)
    x = np.cos(math.pi * (i - 0.25) / (n + 0.5))

    for iteration in range(MAX_NEWTON_ITERATIONS):
        p, dp = _legendre_with_derivative(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) <= NEWTON_TOL:
            logger.debug(f"Gauss-Legendre n={n} converged in {iteration + 1} iterations")
            break
    else:
        raise ConvergenceError(
            f"Gauss-Legendre Newton iteration did not converge for n={n}"
        )

    _, dp = _legendre_with_derivative(n, x)
    weights = 2.0 / ((1.0 - x * x) * dp * dp)

    # ascending order, symmetric about 0
    x = x[::-1]
    weights = weights[::-1]
    x = 0.5 * (x - x[::-1])
    weights = 0.5 * (weights + weights[::-1])
    return QuadratureRule(x, weights, RuleDomain.INTERVAL)


@lru_cache(maxsize=64)
def trapezoid_periodic_rule(n: int) -> QuadratureRule:
    """Equispaced rule θ_j = 2πj/n with weights 2π/n."""
    _check_order(n)
    nodes = 2.0 * math.pi * np.arange(n) / n
    return QuadratureRule(nodes, np.full(n, 2.0 * math.pi / n), RuleDomain.PERIODIC)


def _hermite_normalized(n: int, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Orthonormal Hermite polynomials p_n, p_{n-1} for the weight e^{-x²}."""
    p_prev = np.zeros_like(x)
    p = np.full_like(x, math.pi ** -0.25)
    for k in range(n):
        p_prev, p = p, x * math.sqrt(2.0 / (k + 1)) * p - math.sqrt(k / (k + 1)) * p_prev
    return p, p_prev


@lru_cache(maxsize=64)
def gauss_hermite_rule(n: int) -> QuadratureRule:
    """
    n-point Gauss–Hermite rule for ∫ f(x) e^{-x²} dx.

    Nodes are the eigenvalues of the symmetric tridiagonal Jacobi matrix, polished by
    Newton steps on the normalized recurrence; weights are 1 / (n p_{n-1}(x_i)²).
    """
    _check_order(n)
    if n == 1:
        return QuadratureRule([0.0], [math.sqrt(math.pi)], RuleDomain.GAUSSIAN_WEIGHT)

    off = np.sqrt(np.arange(1, n) / 2.0)
    jacobi = np.diag(off, 1) + np.diag(off, -1)
    x = jacobi_eigh(jacobi)[0]

    for _ in range(3):
        p, p_prev = _hermite_normalized(n, x)
        x = x - p / (math.sqrt(2.0 * n) * p_prev)

    x = 0.5 * (x - x[::-1])
    _, p_prev = _hermite_normalized(n, x)
    weights = 1.0 / (n * p_prev * p_prev)
    weights = 0.5 * (weights + weights[::-1])
    return QuadratureRule(x, weights, RuleDomain.GAUSSIAN_WEIGHT)


def map_to_radial(rule: QuadratureRule) -> QuadratureRule:
    """
    Map an interval rule to [0, 1] with the disk measure factor r folded into the weights.

    Returns:
        Rule with r_i = (x_i + 1)/2 and w_i' = w_i·r_i/2, integrating f(r)·r over [0, 1]
    """
    if rule.domain != RuleDomain.INTERVAL:
        raise DomainError(f"map_to_radial needs an interval rule, got {rule.domain.value}")
    r = 0.5 * (rule.nodes + 1.0)
    return QuadratureRule(r, rule.weights * r * 0.5, RuleDomain.INTERVAL)


@dataclass(frozen=True)
class QuadratureGrid:
    """
    Tensor-product grid on a geometry's domain, flattened to one weight per point.

    coords holds the native coordinates (disk: r, theta; sphere: theta, phi;
    oscillator: x0..x{d-1}). On the oscillator the weights carry the Gaussian factor,
    so integrands must be evaluated weight-compensated (scaled=True).
    """

    geometry: str
    coords: Dict[str, np.ndarray]
    weights: np.ndarray
    scaled: bool = False

    @property
    def size(self) -> int:
        return self.weights.shape[0]

    def linear_weights(self) -> np.ndarray:
        """
        Weights for integrands linear in a weight-compensated function.

        A scaled evaluation carries e^{|x|²/2}, so a product of two of them matches the
        Gaussian factor in the weights but a single one leaves e^{-|x|²/2} behind.
        """
        if not self.scaled:
            return self.weights
        r2 = sum(c * c for c in self.coords.values())
        return self.weights * np.exp(0.5 * r2)

    def cartesian(self) -> np.ndarray:
        """Points as an (n_points, dim) array of Euclidean coordinates."""
        if self.geometry == "disk":
            r, theta = self.coords["r"], self.coords["theta"]
            return np.column_stack([r * np.cos(theta), r * np.sin(theta)])
        if self.geometry == "sphere":
            theta, phi = self.coords["theta"], self.coords["phi"]
            s = np.sin(theta)
            return np.column_stack([s * np.cos(phi), s * np.sin(phi), np.cos(theta)])
        return np.column_stack([self.coords[f"x{i}"] for i in range(len(self.coords))])


def disk_grid(radial: int, angular: int) -> QuadratureGrid:
    """Gauss–Legendre in r (with the r factor) times trapezoid in θ."""
    rr = map_to_radial(gauss_legendre_rule(radial))
    tt = trapezoid_periodic_rule(angular)
    r, theta = np.meshgrid(rr.nodes, tt.nodes, indexing="ij")
    w = np.outer(rr.weights, tt.weights)
    return QuadratureGrid(
        "disk", {"r": r.reshape(-1), "theta": theta.reshape(-1)}, w.reshape(-1)
    )


def sphere_grid(polar: int, angular: int) -> QuadratureGrid:
    """Gauss–Legendre in cos θ times trapezoid in φ."""
    zz = gauss_legendre_rule(polar)
    pp = trapezoid_periodic_rule(angular)
    z, phi = np.meshgrid(zz.nodes, pp.nodes, indexing="ij")
    w = np.outer(zz.weights, pp.weights)
    theta = np.arccos(np.clip(z, -1.0, 1.0))
    return QuadratureGrid(
        "sphere", {"theta": theta.reshape(-1), "phi": phi.reshape(-1)}, w.reshape(-1)
    )


def oscillator_grid(hermite: int, d: int) -> QuadratureGrid:
    """d-fold tensor Gauss–Hermite grid; integrands are evaluated weight-compensated."""
    if not 1 <= d <= 3:
        raise DomainError(f"oscillator dimension must be 1, 2 or 3, got {d}")
    hh = gauss_hermite_rule(hermite)
    axes = np.meshgrid(*([hh.nodes] * d), indexing="ij")
    w = hh.weights
    for _ in range(d - 1):
        w = np.multiply.outer(w, hh.weights)
    coords = {f"x{i}": axis.reshape(-1) for i, axis in enumerate(axes)}
    return QuadratureGrid("oscillator", coords, np.asarray(w).reshape(-1), scaled=True)
