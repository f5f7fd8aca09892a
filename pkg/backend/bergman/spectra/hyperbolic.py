"""
Quasi-hyperbolic coordinates on D_n.

With w = z_n - i|z'|^2 (so Im w = ρ > 0):

    f_j(z) = |z_j| / sqrt(|z'|^2 + |w|),   j < n
    f_n(z) = arg w ∈ (0, π)

and the two identities checked here are

    cot f_n = Re z_n / ρ
    |z_j|^2 / ρ = f_j^2 csc f_n / (1 - Σ_k f_k^2)

Only the coordinates are provided for this family; its spectral
multiplier has no closed form to evaluate.
"""

from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from ..domains import PointLike, as_coords
from ..models import DomainKind


@dataclass
class HyperbolicResiduals:
    """Largest relative residual of each identity over a point set."""
    cot_residual: float
    ratio_residual: float
    points: int

    @property
    def max_residual(self) -> float:
        return max(self.cot_residual, self.ratio_residual)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cot_residual": self.cot_residual,
            "ratio_residual": self.ratio_residual,
            "points": self.points,
        }


def hyperbolic_coordinates(z: PointLike) -> np.ndarray:
    """(f_1, ..., f_n) at a Siegel point or an array of them (..., n)."""
    coords = as_coords(z, DomainKind.SIEGEL)
    zp = coords[..., :-1]
    norm_sq = np.sum(np.abs(zp) ** 2, axis=-1)
    w = coords[..., -1] - 1j * norm_sq
    denom = np.sqrt(norm_sq + np.abs(w))
    radial = np.abs(zp) / denom[..., None]
    # Im w > 0 puts the angle in (0, π)
    angle = np.angle(w)
    return np.concatenate([radial, angle[..., None]], axis=-1)


def _relative(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.abs(a - b) / np.maximum(1.0, np.abs(b))


def hyperbolic_identity_residuals(points: PointLike) -> HyperbolicResiduals:
    """
    Both sides of each identity computed independently, compared by
    |a - b| / max(1, |b|).
    """
    coords = np.atleast_2d(as_coords(points, DomainKind.SIEGEL))
    f = hyperbolic_coordinates(coords)
    fn = f[:, -1]
    fr = f[:, :-1]
    zp = coords[:, :-1]
    rho = coords[:, -1].imag - np.sum(np.abs(zp) ** 2, axis=1)

    cot = np.cos(fn) / np.sin(fn)
    cot_res = _relative(cot, coords[:, -1].real / rho)

    if fr.shape[1] == 0:
        ratio_res = np.zeros(1)
    else:
        rhs = fr ** 2 / np.sin(fn)[:, None] / (1.0 - np.sum(fr ** 2, axis=1))[:, None]
        ratio_res = _relative(rhs, np.abs(zp) ** 2 / rho[:, None])

    return HyperbolicResiduals(
        cot_residual=float(np.max(cot_res)),
        ratio_residual=float(np.max(ratio_res)),
        points=coords.shape[0],
    )
