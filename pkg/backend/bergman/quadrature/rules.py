"""
Materialized quadrature rules and the one-dimensional Gauss families.

All Gauss nodes and weights come from scipy.special; this module only
maps them to the intervals used elsewhere and checks the orders.
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Sequence

import numpy as np
from scipy.special import roots_genlaguerre, roots_hermite, roots_jacobi, roots_legendre

from ..models import QuadratureError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """
    Nodes (N, dim) with strictly positive weights (N,).

    `integrate(f)` evaluates Σ w_i f(x_i) with numpy's pairwise summation.
    """
    nodes: np.ndarray
    weights: np.ndarray
    description: str = ""

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim == 1:
            nodes = nodes[:, None]
        weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if nodes.shape[0] != weights.shape[0]:
            raise QuadratureError(
                f"Rule has {nodes.shape[0]} nodes but {weights.shape[0]} weights"
            )
        if weights.size == 0:
            raise QuadratureError("Rule has no nodes")
        if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
            raise QuadratureError(f"Rule '{self.description}' has non-positive or non-finite weights")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return self.weights.shape[0]

    @property
    def dim(self) -> int:
        return self.nodes.shape[1]

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> Any:
        values = np.asarray(f(self.nodes))
        return np.sum(self.weights * values)

    def to_dict(self) -> Dict[str, Any]:
        return {"description": self.description, "size": self.size, "dim": self.dim}


def _check_order(N: int) -> None:
    if int(N) != N or N < 1:
        raise QuadratureError(f"Quadrature order must be a positive integer, got {N}")


def _check_exponent(name: str, value: float) -> None:
    if not value > -1:
        raise QuadratureError(f"Weight exponent {name} must be > -1, got {value}")


def gauss_jacobi_01(N: int, lam: float, b: float = 0.0) -> QuadratureRule:
    """
    Gauss-Jacobi on [0, 1] for the weight (1-t)^λ t^b.

    Exact for t^j (1-t)^λ t^b with j <= 2N-1. N=1, λ=0 gives the midpoint
    rule with weight 1.
    """
    _check_order(N)
    _check_exponent("lambda", lam)
    _check_exponent("b", b)
    x, w = roots_jacobi(int(N), lam, b)
    t = 0.5 * (1.0 + x)
    w = w / 2.0 ** (lam + b + 1.0)
    return QuadratureRule(t, w, f"gauss-jacobi[0,1] N={N} a={lam} b={b}")


def gauss_legendre_01(N: int) -> QuadratureRule:
    _check_order(N)
    x, w = roots_legendre(int(N))
    return QuadratureRule(0.5 * (1.0 + x), 0.5 * w, f"gauss-legendre[0,1] N={N}")


def gauss_laguerre(N: int, alpha: float = 0.0) -> QuadratureRule:
    """Generalized Gauss-Laguerre on [0, ∞) for t^α e^{-t}."""
    _check_order(N)
    _check_exponent("alpha", alpha)
    x, w = roots_genlaguerre(int(N), alpha)
    keep = w > 0
    return QuadratureRule(x[keep], w[keep], f"gauss-laguerre N={N} alpha={alpha}")


def gauss_hermite(N: int) -> QuadratureRule:
    """Gauss-Hermite on R for e^{-t^2}."""
    _check_order(N)
    x, w = roots_hermite(int(N))
    keep = w > 0
    return QuadratureRule(x[keep], w[keep], f"gauss-hermite N={N}")


def tensor_product(rules: Sequence[QuadratureRule], description: str = "") -> QuadratureRule:
    """Cartesian product rule; weights underflowing to zero are dropped."""
    if not rules:
        raise QuadratureError("tensor_product needs at least one rule")
    grids = np.meshgrid(*[np.arange(r.size) for r in rules], indexing="ij")
    idx = [g.reshape(-1) for g in grids]
    nodes = np.concatenate([r.nodes[i] for r, i in zip(rules, idx)], axis=1)
    log_w = np.sum([np.log(r.weights[i]) for r, i in zip(rules, idx)], axis=0)
    weights = np.exp(log_w)
    keep = weights > 0
    desc = description or " x ".join(r.description for r in rules)
    return QuadratureRule(nodes[keep], weights[keep], desc)


def simplex_rule(n: int, lam: float, N: int, powers: Sequence[float] = ()) -> QuadratureRule:
    """
    Nested (Dirichlet) rule on the simplex {s >= 0, |s| < 1}.

    Integrates h(s) against s^b (1-|s|)^λ ds, b = powers padded with zeros.
    With s_j = t_j Π_{i<j}(1-t_i), axis i carries the Jacobi weight
    t_i^{b_i} (1-t_i)^{λ + n - i + Σ_{j>i} b_j}.
    """
    _check_order(N)
    b = np.zeros(n)
    b[:len(powers)] = powers
    axes = []
    for i in range(n):
        exponent = lam + (n - 1 - i) + float(np.sum(b[i + 1:]))
        axes.append(gauss_jacobi_01(N, exponent, b[i]))
    product = tensor_product(axes)
    t = product.nodes
    s = np.empty_like(t)
    remaining = np.ones(t.shape[0])
    for j in range(n):
        s[:, j] = t[:, j] * remaining
        remaining = remaining * (1.0 - t[:, j])
    logger.debug("simplex rule n=%d lambda=%s N=%d: %d nodes", n, lam, N, product.size)
    return QuadratureRule(s, product.weights, f"simplex n={n} lambda={lam} b={b.tolist()} N={N}")


def trapezoid_angles(M: int) -> np.ndarray:
    """Equispaced angles 2πm/M; exact for trigonometric polynomials of degree < M."""
    if int(M) != M or M < 2 or M % 2:
        raise QuadratureError(f"Angular order must be an even integer >= 2, got {M}")
    return 2.0 * np.pi * np.arange(M) / M
