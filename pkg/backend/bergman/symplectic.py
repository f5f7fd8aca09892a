"""
Kähler geometry of B^n and D_n.

Conventions:
- A real tangent vector U is encoded by its (1,0)-components u, so that
  dz_j(U) = u_j and dz̄_j(U) = conj(u_j).
- The metric is G_jk = -∂_j ∂̄_k log ρ, i.e. (1/(n+1)) ∂∂̄ log K with the
  unweighted kernel, and ω = i Σ G_jk dz_j ∧ dz̄_k. On encoded vectors this
  gives ω(U, V) = -2 Im(uᵀ G v̄).
- The Hamiltonian field X_f of a real f is defined by df(Y) = ω(X_f, Y)
  for all Y, which gives X_f = -i (G^{-1})ᵀ ∂̄f.

Partials ∂̄f = ½(∂_x + i∂_y)f come either from closed forms or from
centered differences.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .domains import PointLike, as_coords
from .models import DomainKind, DomainSpec, DomainMismatchError, defining_function

logger = logging.getLogger(__name__)

# Step for centered differences
FD_STEP = 1e-5

# Step for second differences of log K
HESSIAN_STEP = 1e-4


@dataclass
class ScalarField:
    """
    A smooth real function on a domain, optionally with closed-form ∂̄.

    Attributes:
        value: coordinates (n,) -> real
        dbar: coordinates (n,) -> complex (n,), the ∂/∂z̄_k partials; None
            means partials are taken by finite differences
        name: Label for reports
    """
    value: Callable[[np.ndarray], float]
    dbar: Optional[Callable[[np.ndarray], np.ndarray]] = None
    name: str = "f"

    def __call__(self, z: np.ndarray) -> float:
        return float(self.value(z))

    def partials(self, z: np.ndarray, analytic: bool = True, h: float = FD_STEP) -> np.ndarray:
        if analytic and self.dbar is not None:
            return np.asarray(self.dbar(z), dtype=complex)
        return finite_difference_dbar(self.value, z, h)

    def negated(self) -> "ScalarField":
        dbar = None if self.dbar is None else (lambda z: -np.asarray(self.dbar(z)))
        return ScalarField(lambda z: -self.value(z), dbar, name=f"-{self.name}")


def finite_difference_dbar(f: Callable[[np.ndarray], float], z: np.ndarray, h: float = FD_STEP) -> np.ndarray:
    """
    ∂f/∂z̄_k = ½(∂f/∂x_k + i ∂f/∂y_k) by centered differences, O(h^2).
    """
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape[-1], dtype=complex)
    for k in range(z.shape[-1]):
        e = np.zeros_like(z)
        e[k] = h
        dx = (f(z + e) - f(z - e)) / (2 * h)
        dy = (f(z + 1j * e) - f(z - 1j * e)) / (2 * h)
        out[k] = 0.5 * (dx + 1j * dy)
    return out


def metric_matrix(d: DomainSpec, z: PointLike) -> np.ndarray:
    """
    Closed-form metric G_jk = -∂_j ∂̄_k log ρ at z (weight independent).

    Ball: ((1-|z|^2) δ_jk + z̄_j z_k) / (1-|z|^2)^2.
    Siegel: (ρ δ_jk + z̄_j z_k)/ρ^2 on the z' block, with
    G_jn = z̄_j/(2iρ^2), G_nk = -z_k/(2iρ^2), G_nn = 1/(4ρ^2).
    """
    coords = as_coords(z, d.kind, d.n)
    rho = float(defining_function(d.kind, coords))
    outer = np.outer(np.conj(coords), coords)
    if d.kind is DomainKind.BALL:
        return (rho * np.eye(d.n) + outer) / rho ** 2
    G = np.zeros((d.n, d.n), dtype=complex)
    zp = coords[:-1]
    G[:-1, :-1] = (rho * np.eye(d.n - 1) + outer[:-1, :-1]) / rho ** 2
    G[:-1, -1] = np.conj(zp) / (2j * rho ** 2)
    G[-1, :-1] = -zp / (2j * rho ** 2)
    G[-1, -1] = 1.0 / (4 * rho ** 2)
    return G


def inverse_metric(d: DomainSpec, z: PointLike) -> np.ndarray:
    """
    Closed-form G^{-1}.

    Ball: (1-|z|^2)(δ_jk - z̄_j z_k).
    Siegel: ρ [[I, 2i z̄'], [-2i z'ᵀ, 4 Im z_n]].
    """
    coords = as_coords(z, d.kind, d.n)
    rho = float(defining_function(d.kind, coords))
    if d.kind is DomainKind.BALL:
        return rho * (np.eye(d.n) - np.outer(np.conj(coords), coords))
    Ginv = np.zeros((d.n, d.n), dtype=complex)
    zp = coords[:-1]
    Ginv[:-1, :-1] = np.eye(d.n - 1)
    Ginv[:-1, -1] = 2j * np.conj(zp)
    Ginv[-1, :-1] = -2j * zp
    Ginv[-1, -1] = 4 * coords[-1].imag
    return rho * Ginv


def metric_from_kernel(d: DomainSpec, z: PointLike, h: float = HESSIAN_STEP) -> np.ndarray:
    """
    (1/(n+1)) ∂_j ∂̄_k log K(z, z) with the unweighted kernel, by second differences.

    With H the real Hessian in (x, y): ∂_j ∂̄_k = ¼[H_xx + H_yy + i(H_xy - H_yx)].
    Accurate to roughly 1e-7; used only as an independent cross-check.
    """
    coords = as_coords(z, d.kind, d.n)
    n = d.n

    def logk(c: np.ndarray) -> float:
        return -np.log(defining_function(d.kind, c))

    def shift(c, axis: int, step: float) -> np.ndarray:
        out = np.array(c, dtype=complex, copy=True)
        if axis < n:
            out[axis] += step
        else:
            out[axis - n] += 1j * step
        return out

    H = np.empty((2 * n, 2 * n))
    for a in range(2 * n):
        for b in range(a, 2 * n):
            pp = logk(shift(shift(coords, a, h), b, h))
            pm = logk(shift(shift(coords, a, h), b, -h))
            mp = logk(shift(shift(coords, a, -h), b, h))
            mm = logk(shift(shift(coords, a, -h), b, -h))
            H[a, b] = H[b, a] = (pp - pm - mp + mm) / (4 * h * h)
    Hxx, Hxy = H[:n, :n], H[:n, n:]
    Hyx, Hyy = H[n:, :n], H[n:, n:]
    return 0.25 * (Hxx + Hyy + 1j * (Hxy - Hyx))


def kahler_pair(d: DomainSpec, z: PointLike, U, V) -> float:
    """ω_z(U, V) = -2 Im(uᵀ G v̄) for vectors encoded by (1,0)-components."""
    G = metric_matrix(d, z)
    u = np.asarray(U, dtype=complex)
    v = np.asarray(V, dtype=complex)
    return float(-2.0 * np.imag(u @ G @ np.conj(v)))


def differential(f: ScalarField, z: np.ndarray, Y, analytic: bool = True) -> float:
    """df(Y) = 2 Re(Σ ∂f/∂z_k y_k) for real f."""
    dbar = f.partials(z, analytic=analytic)
    return float(2.0 * np.real(np.conj(dbar) @ np.asarray(Y, dtype=complex)))


def hamiltonian_field_ball(f: ScalarField, z: PointLike, analytic: bool = True) -> np.ndarray:
    """
    X_f on B^n: x_k = -i (1-|z|^2)(∂̄_k f - z_k Σ_j z̄_j ∂̄_j f).
    """
    coords = as_coords(z, DomainKind.BALL)
    dbar = f.partials(coords, analytic=analytic)
    rho = float(defining_function(DomainKind.BALL, coords))
    return -1j * rho * (dbar - coords * np.sum(np.conj(coords) * dbar))


def hamiltonian_field_siegel(f: ScalarField, z: PointLike, analytic: bool = True) -> np.ndarray:
    """
    X_f on D_n with ρ = Im z_n - |z'|^2:
        x_k = -iρ(∂̄_k f - 2i z_k ∂̄_n f),                     k < n
        x_n = -iρ(4 Im z_n ∂̄_n f + 2i Σ_k z̄_k ∂̄_k f)
    """
    coords = as_coords(z, DomainKind.SIEGEL)
    dbar = f.partials(coords, analytic=analytic)
    rho = float(defining_function(DomainKind.SIEGEL, coords))
    zp = coords[:-1]
    out = np.empty_like(coords)
    out[:-1] = -1j * rho * (dbar[:-1] - 2j * zp * dbar[-1])
    out[-1] = -1j * rho * (4 * coords[-1].imag * dbar[-1] + 2j * np.sum(np.conj(zp) * dbar[:-1]))
    return out


def hamiltonian_field(kind: DomainKind, f: ScalarField, z: PointLike, analytic: bool = True) -> np.ndarray:
    if kind is DomainKind.BALL:
        return hamiltonian_field_ball(f, z, analytic)
    return hamiltonian_field_siegel(f, z, analytic)


def hamiltonian_residual(kind: DomainKind, f: ScalarField, z: PointLike, Y, analytic: bool = True) -> float:
    """|df(Y) - ω(X_f, Y)|, the defining identity of X_f."""
    coords = as_coords(z, kind)
    d = DomainSpec(kind, coords.shape[-1])
    X = hamiltonian_field(kind, f, coords, analytic)
    return abs(differential(f, coords, Y, analytic) - kahler_pair(d, coords, X, Y))


def verify_moment_property(
    g,
    X,
    z: PointLike,
    analytic: bool = True,
    field: Optional[ScalarField] = None,
) -> float:
    """
    ‖X_{μ_X}(z) - X♯_z‖ for μ_X = <μ^G, X>.

    Args:
        g: GroupAction
        X: Lie algebra element (real n-vector)
        z: Point in the action's domain
        analytic: Closed-form partials when True, centered differences otherwise
        field: Override for μ_X (the verification harness injects faults here)

    Returns:
        Euclidean norm of the difference of holomorphic components
    """
    from .moment import moment_component

    coords = g.coords(z)
    if coords.ndim != 1:
        raise DomainMismatchError("verify_moment_property takes a single point")
    X = np.asarray(X, dtype=float)
    mu_x = field if field is not None else moment_component(g, X)
    lhs = hamiltonian_field(g.domain_kind, mu_x, coords, analytic)
    rhs = g.field_coords(X, coords)
    residual = float(np.linalg.norm(lhs - rhs))
    logger.debug("%s moment property residual %.3e", g.label, residual)
    return residual
