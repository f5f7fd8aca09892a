"""
Domain realizations: the unit ball B^n and the Siegel domain D_n.

Provides the weighted measures, the weighted Bergman kernels, the Cayley
pair (φ: B^n -> D_n, ψ: D_n -> B^n) and the intertwining unitary U_λ.

All operations accept either a validated `Point` or raw coordinate arrays
of shape (..., n); array inputs are vectorized, which the quadrature
driven modules rely on.
"""

from typing import Callable, Optional, Union

import numpy as np
from scipy.special import gammaln

from .models import (
    BOUNDARY_GUARD,
    DimensionMismatchError,
    DomainError,
    DomainKind,
    DomainMismatchError,
    DomainSpec,
    Point,
    defining_function,
)


PointLike = Union[Point, np.ndarray]


def as_coords(z: PointLike, kind: Optional[DomainKind] = None, n: Optional[int] = None) -> np.ndarray:
    """
    Coordinates of a Point or array, checked against an expected domain.

    Raw arrays are checked for the strict domain inequality (with guard
    band) when `kind` is given; Points were validated on construction.
    """
    if isinstance(z, Point):
        if kind is not None and z.kind is not kind:
            raise DomainMismatchError(
                f"Expected a {kind.value} point, got a {z.kind.value} point"
            )
        if n is not None and z.n != n:
            raise DimensionMismatchError(f"Expected dimension {n}, got {z.n}")
        return z.coords
    arr = np.asarray(z, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if n is not None and arr.shape[-1] != n:
        raise DimensionMismatchError(f"Expected dimension {n}, got {arr.shape[-1]}")
    if kind is not None:
        rho = defining_function(kind, arr)
        if np.any(~(rho > BOUNDARY_GUARD)):
            raise DomainError(f"Coordinates fall outside the {kind.value} domain or its guard band")
    return arr


def contains(d: DomainSpec, v) -> bool:
    """True iff v satisfies the strict domain inequality of d."""
    arr = np.asarray(v, dtype=complex).reshape(-1)
    if arr.shape[0] != d.n:
        raise DimensionMismatchError(f"Vector has length {arr.shape[0]}, domain dimension is {d.n}")
    return bool(defining_function(d.kind, arr) > 0)


def normalization_constant(n: int, lam: float) -> float:
    """c_λ = Γ(n+1+λ) / (π^n Γ(λ+1)), evaluated in log space."""
    if not lam > -1:
        raise ValueError(f"Weight must satisfy lambda > -1, got {lam}")
    return float(np.exp(gammaln(n + 1 + lam) - gammaln(lam + 1) - n * np.log(np.pi)))


def cayley_to_siegel(z: PointLike) -> PointLike:
    """
    φ(z) = i/(1+z_n) · (z', 1-z_n).

    Returns a Point on D_n for Point input and an array otherwise.
    """
    coords = as_coords(z, DomainKind.BALL if isinstance(z, Point) else None)
    denom = 1.0 + coords[..., -1]
    if np.any(np.abs(denom) < BOUNDARY_GUARD):
        raise DomainError("Cayley transform pole: z_n = -1")
    factor = 1j / denom
    out = np.empty_like(coords)
    out[..., :-1] = factor[..., None] * coords[..., :-1]
    out[..., -1] = factor * (1.0 - coords[..., -1])
    if isinstance(z, Point):
        return Point(out, z.domain.with_kind(DomainKind.SIEGEL))
    return out


def cayley_to_ball(w: PointLike) -> PointLike:
    """ψ(w) = 1/(1 - i w_n) · (-2i w', 1 + i w_n)."""
    coords = as_coords(w, DomainKind.SIEGEL if isinstance(w, Point) else None)
    denom = 1.0 - 1j * coords[..., -1]
    if np.any(np.abs(denom) < BOUNDARY_GUARD):
        raise DomainError("Inverse Cayley transform pole: w_n = -i")
    factor = 1.0 / denom
    out = np.empty_like(coords)
    out[..., :-1] = (-2j * factor)[..., None] * coords[..., :-1]
    out[..., -1] = factor * (1.0 + 1j * coords[..., -1])
    if isinstance(w, Point):
        return Point(out, w.domain.with_kind(DomainKind.BALL))
    return out


def _principal_power(base: np.ndarray, exponent: float) -> np.ndarray:
    """Principal-branch power; bases must sit in the open right half-plane."""
    base = np.asarray(base, dtype=complex)
    if np.any(base.real <= 0):
        raise DomainError("Power base left the right half-plane; points are not inside the domain")
    return np.exp(exponent * np.log(base))


def bergman_kernel(d: DomainSpec, z: PointLike, w: PointLike) -> np.ndarray:
    """
    Weighted Bergman kernel K_λ(z, w).

    Ball: (1 - z·w̄)^{-(λ+n+1)}.
    Siegel: ((z_n - w̄_n)/(2i) - z'·w̄')^{-(λ+n+1)}.
    """
    zc = as_coords(z, d.kind, d.n)
    wc = as_coords(w, d.kind, d.n)
    exponent = -(d.lam + d.n + 1)
    if d.kind is DomainKind.BALL:
        base = 1.0 - np.sum(zc * np.conj(wc), axis=-1)
    else:
        base = (zc[..., -1] - np.conj(wc[..., -1])) / 2j - np.sum(
            zc[..., :-1] * np.conj(wc[..., :-1]), axis=-1
        )
    value = _principal_power(base, exponent)
    return value if np.ndim(value) else complex(value)


def weight_density(d: DomainSpec, z: PointLike) -> np.ndarray:
    """
    Density of the weighted measure with respect to Lebesgue measure.

    Ball: c_λ (1-|z|^2)^λ; Siegel: (c_λ/4)(Im z_n - |z'|^2)^λ.
    """
    coords = as_coords(z, d.kind, d.n)
    c = normalization_constant(d.n, d.lam)
    rho = defining_function(d.kind, coords)
    if d.kind is DomainKind.SIEGEL:
        c = c / 4.0
    value = c * rho ** d.lam
    return value if np.ndim(value) else float(value)


def u_lambda_apply(lam: float, f: Callable[[np.ndarray], np.ndarray], w: PointLike) -> np.ndarray:
    """
    (U_λ f)(w) = (2/(1 - i w_n))^{λ+n+1} · f(ψ(w)).

    `f` is evaluated on ball coordinate arrays.
    """
    coords = as_coords(w, DomainKind.SIEGEL if isinstance(w, Point) else None)
    n = coords.shape[-1]
    ball = cayley_to_ball(coords)
    factor = _principal_power(2.0 / (1.0 - 1j * coords[..., -1]), lam + n + 1)
    value = factor * np.asarray(f(ball))
    return value if np.ndim(value) else complex(value)


def sample_points(
    kind: DomainKind,
    n: int,
    count: int,
    rng: np.random.Generator,
    margin: float = 0.05,
) -> np.ndarray:
    """
    Random interior points, shape (count, n), kept away from the boundary.

    Ball: uniform directions with radius in [0, 1 - margin).
    Siegel: z' Gaussian, Im z_n - |z'|^2 in (margin + 0.15, 2), Re z_n in (-1, 1).
    """
    if kind is DomainKind.BALL:
        g = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        radius = (1.0 - margin) * rng.uniform(size=(count, 1)) ** (1.0 / (2 * n))
        return g * radius
    zp = 0.6 * (rng.normal(size=(count, n - 1)) + 1j * rng.normal(size=(count, n - 1)))
    rho = rng.uniform(margin + 0.15, 2.0, size=count)
    x = rng.uniform(-1.0, 1.0, size=count)
    zn = x + 1j * (rho + np.sum(np.abs(zp) ** 2, axis=1))
    return np.concatenate([zp, zn[:, None]], axis=1)
