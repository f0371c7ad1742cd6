"""
Quadrature module for energycov
Gauss–Legendre, periodic trapezoid and Gauss–Hermite rules plus tensor grids per geometry
"""

from .quadrature_rules import (
    QuadratureRule,
    QuadratureGrid,
    RuleDomain,
    gauss_legendre_rule,
    trapezoid_periodic_rule,
    gauss_hermite_rule,
    map_to_radial,
    disk_grid,
    sphere_grid,
    oscillator_grid,
)

__all__ = [
    "QuadratureRule",
    "QuadratureGrid",
    "RuleDomain",
    "gauss_legendre_rule",
    "trapezoid_periodic_rule",
    "gauss_hermite_rule",
    "map_to_radial",
    "disk_grid",
    "sphere_grid",
    "oscillator_grid",
]
