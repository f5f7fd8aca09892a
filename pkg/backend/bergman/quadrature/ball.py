"""
Product rule for ∫_{B^n} F dv_λ.

Polar coordinates z_j = r_j e^{iθ_j} with s_j = r_j^2 give
dv_λ = c_λ 2^{-n} (1-|s|)^λ ds dθ. The s-integral over the simplex uses
the nested Jacobi rule, the angles use the trapezoid rule. The full
product has radial_N^n · angular_N^n nodes, so it is never stored: the
rule yields bounded chunks of (points, weights).
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterator, Optional, Tuple

import numpy as np

from ..domains import normalization_constant
from ..models import QuadratureError
from .rules import QuadratureRule, simplex_rule, trapezoid_angles

logger = logging.getLogger(__name__)

DEFAULT_CHUNK = 262144

# (radial_N, angular_N) per dimension; the node count grows like (radial_N·angular_N)^n
BALL_DEFAULT_ORDERS = {1: (48, 96), 2: (32, 48), 3: (10, 20)}
BALL_FALLBACK_ORDERS = (5, 12)


def default_ball_orders(n: int) -> Tuple[int, int]:
    """Default (radial_N, angular_N) for B^n, sized for degree-8 truncations."""
    if n < 1:
        raise QuadratureError(f"Dimension must be >= 1, got {n}")
    return BALL_DEFAULT_ORDERS.get(n, BALL_FALLBACK_ORDERS)


@dataclass(eq=False)
class ChunkedRule(ABC):
    """
    A lazily expanded product of a radial rule and an angular grid.

    Subclasses provide `_points(radial_idx, angle_grid)`; the weights are
    radial_weights[r] · angular_weight.
    """
    n: int
    lam: float
    radial: QuadratureRule
    angles: np.ndarray
    angular_dims: int
    radial_scale: float
    chunk_size: int = DEFAULT_CHUNK
    radial_order: int = 0

    @property
    def angular_size(self) -> int:
        return self.angles.shape[0] ** self.angular_dims

    @property
    def size(self) -> int:
        return self.radial.size * self.angular_size

    @property
    def angular_weight(self) -> float:
        return (2.0 * np.pi / self.angles.shape[0]) ** self.angular_dims

    @property
    def description(self) -> str:
        return f"{type(self).__name__}(n={self.n}, lambda={self.lam}, nodes={self.size})"

    @abstractmethod
    def _points(self, radial_idx: np.ndarray, theta: np.ndarray) -> np.ndarray:
        """Points (k, n) for radial node indices (k,) and angles (k, angular_dims)."""

    def chunks(self, chunk_size: Optional[int] = None) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
        """Yield (points (k, n) complex, weights (k,)) covering the whole rule once."""
        chunk = int(chunk_size or self.chunk_size)
        if chunk < 1:
            raise QuadratureError(f"Chunk size must be positive, got {chunk}")
        A = self.angular_size
        M = self.angles.shape[0]
        for start in range(0, self.size, chunk):
            idx = np.arange(start, min(start + chunk, self.size))
            r_idx = idx // A
            a_idx = idx % A
            if self.angular_dims:
                digits = np.stack(np.unravel_index(a_idx, (M,) * self.angular_dims), axis=1)
                theta = self.angles[digits]
            else:
                theta = np.zeros((idx.shape[0], 0))
            w = self.radial_scale * self.angular_weight * self.radial.weights[r_idx]
            yield self._points(r_idx, theta), w

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> Any:
        total = 0.0
        for z, w in self.chunks():
            total = total + np.sum(w * np.asarray(f(z)))
        return total

    def to_quadrature_rule(self) -> QuadratureRule:
        """Materialize as a rule with real nodes (Re z, Im z); small orders only."""
        pts, wts = [], []
        for z, w in self.chunks():
            pts.append(np.concatenate([z.real, z.imag], axis=1))
            wts.append(w)
        return QuadratureRule(np.concatenate(pts), np.concatenate(wts), self.description)

    def to_dict(self) -> Dict[str, Any]:
        return {"description": self.description, "size": self.size, "n": self.n, "lambda": self.lam}


class BallRule(ChunkedRule):
    """Chunked product rule for dv_λ on B^n; total mass 1."""

    def _points(self, radial_idx, theta):
        r = np.sqrt(self.radial.nodes[radial_idx])
        return r * np.exp(1j * theta)


def ball_full_rule(
    n: int,
    lam: float,
    radial_N: Optional[int] = None,
    angular_N: Optional[int] = None,
    chunk_size: int = DEFAULT_CHUNK,
) -> BallRule:
    """
    Build the ball rule.

    Integrates |z^p|^2 exactly for |p| <= 2·radial_N - 1 and every
    trigonometric degree below angular_N. Orders left as None come from
    default_ball_orders(n).
    """
    default_radial, default_angular = default_ball_orders(n)
    radial_N = default_radial if radial_N is None else int(radial_N)
    angular_N = default_angular if angular_N is None else int(angular_N)
    radial = simplex_rule(n, lam, radial_N)
    angles = trapezoid_angles(angular_N)
    rule = BallRule(
        n=n,
        lam=lam,
        radial=radial,
        angles=angles,
        angular_dims=n,
        radial_scale=normalization_constant(n, lam) / 2.0 ** n,
        chunk_size=chunk_size,
        radial_order=radial_N,
    )
    logger.info("Built ball rule n=%d lambda=%s with %d nodes", n, lam, rule.size)
    return rule
