"""
Quadrature engines: one-dimensional Gauss families, simplex and orthant
products, the ball and Siegel product rules, and Monte Carlo.
"""

from .rules import (
    QuadratureRule,
    gauss_hermite,
    gauss_jacobi_01,
    gauss_laguerre,
    gauss_legendre_01,
    simplex_rule,
    tensor_product,
    trapezoid_angles,
)
from .axes import (
    Axis,
    HermiteAxis,
    JacobiAxis,
    LaguerreAxis,
    RationalAxis,
    dirichlet_orthant_rule,
    orthant_rule,
)
from .ball import BallRule, ChunkedRule, ball_full_rule, default_ball_orders
from .siegel import SiegelRule, siegel_full_rule
from .monte_carlo import MonteCarloEstimate, ball_sampler, elliptic_gamma_sampler, monte_carlo

__all__ = [
    "QuadratureRule",
    "gauss_hermite",
    "gauss_jacobi_01",
    "gauss_laguerre",
    "gauss_legendre_01",
    "simplex_rule",
    "tensor_product",
    "trapezoid_angles",
    "Axis",
    "HermiteAxis",
    "JacobiAxis",
    "LaguerreAxis",
    "RationalAxis",
    "dirichlet_orthant_rule",
    "orthant_rule",
    "BallRule",
    "ChunkedRule",
    "ball_full_rule",
    "default_ball_orders",
    "SiegelRule",
    "siegel_full_rule",
    "MonteCarloEstimate",
    "ball_sampler",
    "elliptic_gamma_sampler",
    "monte_carlo",
]
