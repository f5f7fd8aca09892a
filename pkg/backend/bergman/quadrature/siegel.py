"""
Independent product rule on the Siegel domain D_n.

The rule integrates g against |2/(1 - i z_n)|^{2a} dv̂_λ with
a = λ + n + 1, the measure carried by U_λ-transported functions. The
variables are
- z_j = sqrt(s_j) e^{iθ_j} for j < n,
- ρ = Im z_n - |z'|^2,
- x = Re z_n = T tan φ with T = 1 + ρ + |s| and σ = sin φ.

In σ the Cauchy-type factor becomes the Jacobi weight (1-σ^2)^{a-3/2}.
The pair (ρ, s) = y/(1-|y|) comes from a simplex rule with weight
y_1^λ (1-|y|)^{λ+n}. Transported polynomials are polynomial in these
variables, so their norms are integrated exactly.
"""

import logging
from typing import Optional

import numpy as np
from scipy.special import roots_jacobi

from ..domains import normalization_constant
from .ball import DEFAULT_CHUNK, ChunkedRule
from .rules import QuadratureRule, simplex_rule, tensor_product, trapezoid_angles

logger = logging.getLogger(__name__)


class SiegelRule(ChunkedRule):
    """Chunked product rule; radial nodes are (y_1, ..., y_n, σ)."""

    @property
    def exponent(self) -> float:
        return self.lam + self.n + 1

    def _points(self, radial_idx, theta):
        nodes = self.radial.nodes[radial_idx]
        v, sigma = nodes[:, :-1], nodes[:, -1]
        rest = 1.0 - np.sum(v, axis=1)
        y = v / rest[:, None]
        rho, s = y[:, 0], y[:, 1:]
        T = 1.0 + np.sum(y, axis=1)
        x = T * sigma / np.sqrt(1.0 - sigma ** 2)
        z = np.empty((nodes.shape[0], self.n), dtype=complex)
        z[:, :-1] = np.sqrt(s) * np.exp(1j * theta)
        z[:, -1] = x + 1j * (rho + np.sum(s, axis=1))
        return z

    def density(self, z: np.ndarray) -> np.ndarray:
        """|2/(1 - i z_n)|^{2a}."""
        return np.abs(2.0 / (1.0 - 1j * z[..., -1])) ** (2 * self.exponent)

    def integrate_dv_hat(self, g) -> complex:
        """∫ g dv̂_λ, for integrands carrying the factor |2/(1 - i z_n)|^{2a} themselves."""
        total = 0.0
        for z, w in self.chunks():
            total = total + np.sum(w * np.asarray(g(z)) / self.density(z))
        return total


def siegel_full_rule(
    n: int,
    lam: float,
    radial_N: int = 16,
    angular_N: int = 32,
    sigma_N: Optional[int] = None,
    chunk_size: int = DEFAULT_CHUNK,
) -> SiegelRule:
    """
    Build the Siegel rule; f ≡ 1 integrates to 1.

    Args:
        n: Complex dimension
        lam: Weight λ > -1
        radial_N: Jacobi order per simplex axis
        angular_N: Trapezoid order per angle (n-1 angles)
        sigma_N: Jacobi order for σ; defaults to radial_N
    """
    a = lam + n + 1
    sigma_N = sigma_N or radial_N
    # weight y_1^λ (1-|y|)^{λ+n}
    simplex = simplex_rule(n, lam + n, radial_N, powers=(lam,))
    x, w = roots_jacobi(int(sigma_N), a - 1.5, a - 1.5)
    sigma = QuadratureRule(x, w, f"gauss-jacobi[-1,1] N={sigma_N} a=b={a - 1.5}")
    radial = tensor_product([simplex, sigma])
    scale = normalization_constant(n, lam) / 4.0 * 4.0 ** a / 2.0 ** (n - 1)
    rule = SiegelRule(
        n=n,
        lam=lam,
        radial=radial,
        angles=trapezoid_angles(angular_N),
        angular_dims=n - 1,
        radial_scale=scale,
        chunk_size=chunk_size,
        radial_order=radial_N,
    )
    logger.info("Built Siegel rule n=%d lambda=%s with %d nodes", n, lam, rule.size)
    return rule

