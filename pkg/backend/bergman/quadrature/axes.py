"""
Per-axis rules for integrals over R_+ and R, and their products.

Each Axis produces nodes with *plain* weights, i.e. Σ w_i g(x_i)
approximates ∫ g(x) dx. The choice of axis tells the rule which weight
the integrand roughly carries, so that Gauss exactness is spent on the
smooth remainder.
"""

from abc import ABC, abstractmethod
from typing import List, Sequence, Tuple

import numpy as np

from ..models import QuadratureError
from .rules import (
    QuadratureRule,
    gauss_hermite,
    gauss_jacobi_01,
    gauss_laguerre,
    gauss_legendre_01,
    simplex_rule,
    tensor_product,
)


class Axis(ABC):
    """Abstract one-dimensional integration axis with plain weights."""

    @property
    @abstractmethod
    def description(self) -> str:
        pass

    @abstractmethod
    def nodes_weights(self, N: int) -> Tuple[np.ndarray, np.ndarray]:
        """Nodes and plain weights of order N."""
        pass

    def rule(self, N: int) -> QuadratureRule:
        x, w = self.nodes_weights(N)
        return QuadratureRule(x, w, f"{self.description} N={N}")


class RationalAxis(Axis):
    """u = t/(1-t) on R_+, Gauss-Legendre in t; suits algebraic decay."""

    @property
    def description(self) -> str:
        return "rational[0,inf)"

    def nodes_weights(self, N):
        base = gauss_legendre_01(N)
        t = base.nodes[:, 0]
        return t / (1.0 - t), base.weights / (1.0 - t) ** 2


class LaguerreAxis(Axis):
    """
    Integrands behaving like u^α e^{-scale·u} on R_+.

    Nodes u = t/scale for the Gauss-Laguerre nodes t; the plain weight is
    w·e^t·t^{-α}/scale, formed in log space.
    """

    def __init__(self, alpha: float = 0.0, scale: float = 1.0):
        if not scale > 0:
            raise QuadratureError(f"Laguerre axis scale must be positive, got {scale}")
        self.alpha = float(alpha)
        self.scale = float(scale)

    @property
    def description(self) -> str:
        return f"laguerre(alpha={self.alpha}, scale={self.scale})"

    def nodes_weights(self, N):
        base = gauss_laguerre(N, self.alpha)
        t = base.nodes[:, 0]
        log_w = np.log(base.weights) + t - self.alpha * np.log(t) - np.log(self.scale)
        return t / self.scale, np.exp(log_w)


class HermiteAxis(Axis):
    """Integrands behaving like e^{-(scale·(x - center))^2} on R."""

    def __init__(self, center: float = 0.0, scale: float = 1.0):
        if not scale > 0:
            raise QuadratureError(f"Hermite axis scale must be positive, got {scale}")
        self.center = float(center)
        self.scale = float(scale)

    @property
    def description(self) -> str:
        return f"hermite(center={self.center}, scale={self.scale})"

    def nodes_weights(self, N):
        base = gauss_hermite(N)
        t = base.nodes[:, 0]
        log_w = np.log(base.weights) + t * t - np.log(self.scale)
        return self.center + t / self.scale, np.exp(log_w)


class JacobiAxis(Axis):
    """Integrands behaving like (1-t)^a t^b on [0, 1]."""

    def __init__(self, a: float = 0.0, b: float = 0.0):
        self.a = float(a)
        self.b = float(b)

    @property
    def description(self) -> str:
        return f"jacobi(a={self.a}, b={self.b})"

    def nodes_weights(self, N):
        base = gauss_jacobi_01(N, self.a, self.b)
        t = base.nodes[:, 0]
        log_w = np.log(base.weights) - self.a * np.log1p(-t) - self.b * np.log(t)
        return t, np.exp(log_w)


def orthant_rule(axes: Sequence[Axis], orders: Sequence[int]) -> QuadratureRule:
    """
    Product of per-axis rules with plain weights.

    ∫_{R_+} du/(1+u)^2 = 1 is exact to roundoff on RationalAxis.
    """
    if len(axes) != len(orders):
        raise QuadratureError(f"Got {len(axes)} axes but {len(orders)} orders")
    rules: List[QuadratureRule] = [axis.rule(N) for axis, N in zip(axes, orders)]
    return tensor_product(rules, " x ".join(r.description for r in rules))


def dirichlet_orthant_rule(n: int, alpha: float, N: int) -> QuadratureRule:
    """
    Plain-weight rule on R_+^n for integrands decaying like (1+|u|)^{-(n+1+α)}.

    u = s/(1-|s|) maps the simplex to the orthant with du = ds/(1-|s|)^{n+1}.
    A simplex rule for (1-|s|)^α then gives plain weights
    W·(1-|s|)^{-(n+1+α)}. Integration is exact whenever
    g(u(s))·(1-|s|)^{-(n+1+α)} is a polynomial in s of low enough degree;
    ∫ u_1 (1+|u|)^{-5} du over R_+^2 with α = 1 is one such case.
    """
    base = simplex_rule(n, alpha, N)
    s = base.nodes
    rest = 1.0 - np.sum(s, axis=1)
    u = s / rest[:, None]
    log_w = np.log(base.weights) - (n + 1 + alpha) * np.log(rest)
    return QuadratureRule(u, np.exp(log_w), f"dirichlet-orthant n={n} alpha={alpha} N={N}")
