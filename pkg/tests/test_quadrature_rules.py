"""
Tests for the quadrature rules and per-geometry grids
"""

import math

import numpy as np
import pytest

from src.errors import DomainError
from src.quadrature import (
    RuleDomain,
    disk_grid,
    gauss_hermite_rule,
    gauss_legendre_rule,
    map_to_radial,
    oscillator_grid,
    sphere_grid,
    trapezoid_periodic_rule,
)


class TestGaussLegendre:
    def test_one_point(self):
        rule = gauss_legendre_rule(1)
        assert rule.nodes.tolist() == [0.0]
        assert rule.weights[0] == pytest.approx(2.0, abs=1e-15)

    def test_two_points(self):
        rule = gauss_legendre_rule(2)
        np.testing.assert_allclose(rule.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
        np.testing.assert_allclose(rule.weights, [1.0, 1.0], atol=1e-15)

    @pytest.mark.parametrize("n", [3, 10, 40, 64])
    def test_matches_numpy(self, n):
        x, w = np.polynomial.legendre.leggauss(n)
        rule = gauss_legendre_rule(n)
        np.testing.assert_allclose(rule.nodes, x, atol=1e-14)
        np.testing.assert_allclose(rule.weights, w, atol=1e-14)

    def test_symmetric(self):
        rule = gauss_legendre_rule(17)
        assert np.array_equal(rule.nodes, -rule.nodes[::-1])
        assert np.array_equal(rule.weights, rule.weights[::-1])

    def test_exact_degree(self):
        rule = gauss_legendre_rule(5)
        assert rule.integrate(lambda x: x ** 8) == pytest.approx(2 / 9, abs=1e-15)

    def test_cached_read_only(self):
        rule = gauss_legendre_rule(8)
        assert rule is gauss_legendre_rule(8)
        with pytest.raises(ValueError):
            rule.nodes[0] = 0.0

    def test_rejects_zero_order(self):
        with pytest.raises(DomainError):
            gauss_legendre_rule(0)


class TestTrapezoid:
    def test_constant(self):
        assert trapezoid_periodic_rule(7).integrate(np.ones_like) == pytest.approx(2 * math.pi)

    def test_trig_exact(self):
        rule = trapezoid_periodic_rule(16)
        assert abs(rule.integrate(lambda t: np.cos(5 * t))) < 1e-14
        assert rule.integrate(lambda t: np.cos(3 * t) ** 2) == pytest.approx(math.pi, abs=1e-14)
        assert rule.domain == RuleDomain.PERIODIC


class TestGaussHermite:
    def test_one_point(self):
        rule = gauss_hermite_rule(1)
        assert rule.nodes.tolist() == [0.0]
        assert rule.weights[0] == pytest.approx(math.sqrt(math.pi))

    def test_two_points(self):
        rule = gauss_hermite_rule(2)
        np.testing.assert_allclose(rule.nodes, [-1 / math.sqrt(2), 1 / math.sqrt(2)], atol=1e-15)
        np.testing.assert_allclose(rule.weights, [math.sqrt(math.pi) / 2] * 2, atol=1e-15)

    @pytest.mark.parametrize("n", [5, 20, 80])
    def test_matches_numpy(self, n):
        x, w = np.polynomial.hermite.hermgauss(n)
        rule = gauss_hermite_rule(n)
        np.testing.assert_allclose(rule.nodes, x, atol=1e-12)
        np.testing.assert_allclose(rule.weights, w, rtol=1e-8, atol=1e-300)

    def test_moments(self):
        rule = gauss_hermite_rule(10)
        assert rule.integrate(lambda x: x ** 2) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-13)
        assert rule.integrate(lambda x: x ** 4) == pytest.approx(3 * math.sqrt(math.pi) / 4, rel=1e-13)


class TestRadialMap:
    def test_monomials(self):
        rule = map_to_radial(gauss_legendre_rule(8))
        assert rule.integrate(np.ones_like) == pytest.approx(0.5, abs=1e-14)
        assert rule.integrate(lambda r: r ** 2) == pytest.approx(0.25, abs=1e-14)
        assert rule.integrate(lambda r: r ** 4) == pytest.approx(1 / 6, abs=1e-14)

    def test_requires_interval(self):
        with pytest.raises(DomainError):
            map_to_radial(trapezoid_periodic_rule(4))


class TestGrids:
    def test_disk_area(self):
        grid = disk_grid(8, 16)
        assert grid.size == 128
        assert np.sum(grid.weights) == pytest.approx(math.pi, rel=1e-13)

    def test_sphere_area(self):
        grid = sphere_grid(8, 16)
        assert np.sum(grid.weights) == pytest.approx(4 * math.pi, rel=1e-13)
        np.testing.assert_allclose(np.linalg.norm(grid.cartesian(), axis=1), 1.0, atol=1e-15)

    def test_oscillator_mass(self):
        grid = oscillator_grid(12, 2)
        assert grid.scaled
        assert grid.size == 144
        assert np.sum(grid.weights) == pytest.approx(math.pi, rel=1e-13)
        assert grid.cartesian().shape == (144, 2)

    def test_linear_weights_plain_grid(self):
        grid = disk_grid(8, 16)
        np.testing.assert_array_equal(grid.linear_weights(), grid.weights)

    def test_linear_weights_oscillator(self):
        grid = oscillator_grid(80, 1)
        x = grid.coords["x0"]
        np.testing.assert_allclose(grid.linear_weights(), grid.weights * np.exp(0.5 * x * x), rtol=1e-15)
        # integral of e^{-x^2/2} over the line
        assert np.sum(grid.linear_weights()) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-10)

    def test_oscillator_dimension(self):
        with pytest.raises(DomainError):
            oscillator_grid(4, 4)
