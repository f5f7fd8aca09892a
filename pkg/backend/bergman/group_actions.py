"""
The five maximal Abelian subgroup actions.

E(n) acts on the ball; P(n), H(n), N(n) and N(n,k) act on the Siegel
domain. Each action is a GroupAction subclass carrying:
- the action itself and its one-parameter subgroups,
- the fundamental vector fields X♯,
- the closed-form moment data (pairing vector and scale),
- a constructive orbit transporter and a moment-map section.

Group parameters always live in the additive chart R^n: torus angles,
real translations, and the logarithm of the R_+ factor of H(n). In this
chart the group law is vector addition and exp(sX) = sX.
"""

import logging
from abc import ABC, abstractmethod
from enum import Enum
from typing import Dict, Optional, Union

import numpy as np

from .domains import PointLike, as_coords
from .models import DomainKind, DomainSpec, NotInSameFiber, Point, defining_function

logger = logging.getLogger(__name__)

# Below this modulus a torus phase is unconstrained and set to 0
PHASE_FLOOR = 1e-14


class ActionKind(Enum):
    """Labels of the five conjugacy-class representatives."""
    QUASI_ELLIPTIC = "elliptic"
    QUASI_PARABOLIC = "parabolic"
    QUASI_HYPERBOLIC = "hyperbolic"
    NILPOTENT = "nilpotent"
    QUASI_NILPOTENT = "quasinilpotent"


def _phases(w: np.ndarray, z: np.ndarray) -> np.ndarray:
    """arg z_j - arg w_j, with 0 wherever either coordinate vanishes."""
    raw = np.angle(z) - np.angle(w)
    free = (np.abs(w) < PHASE_FLOOR) | (np.abs(z) < PHASE_FLOOR)
    return np.where(free, 0.0, raw)


class GroupAction(ABC):
    """
    Abstract base class for the MASG actions.

    Coordinates are arrays of shape (..., n); parameters and Lie algebra
    elements are real arrays broadcastable to the same leading shape.
    """

    def __init__(self, n: int):
        if int(n) != n or n < 1:
            raise ValueError(f"Dimension must be a positive integer, got {n}")
        self.n = int(n)

    @property
    @abstractmethod
    def kind(self) -> ActionKind:
        """Which of the five actions this is."""

    @property
    def domain_kind(self) -> DomainKind:
        return DomainKind.SIEGEL

    @property
    def k(self) -> Optional[int]:
        return None

    @property
    def label(self) -> str:
        """Short human-readable name such as 'P(3)' or 'N(4,1)'."""
        names = {
            ActionKind.QUASI_ELLIPTIC: "E",
            ActionKind.QUASI_PARABOLIC: "P",
            ActionKind.QUASI_HYPERBOLIC: "H",
            ActionKind.NILPOTENT: "N",
            ActionKind.QUASI_NILPOTENT: "N",
        }
        suffix = f"{self.n},{self.k}" if self.k is not None else f"{self.n}"
        return f"{names[self.kind]}({suffix})"

    def domain(self, lam: float = 0.0) -> DomainSpec:
        return DomainSpec(self.domain_kind, self.n, lam)

    def coords(self, z: PointLike) -> np.ndarray:
        """Validated coordinates for this action's domain."""
        return as_coords(z, self.domain_kind, self.n)

    # --- action and one-parameter subgroups ---

    @abstractmethod
    def act_coords(self, param: np.ndarray, z: np.ndarray) -> np.ndarray:
        """Apply the group element with chart parameter `param` to coordinates."""

    @abstractmethod
    def field_coords(self, X: np.ndarray, z: np.ndarray) -> np.ndarray:
        """Holomorphic components of the fundamental field X♯ at z."""

    # --- moment data: μ^G = -scale · pairing ---

    @abstractmethod
    def pairing_vector(self, z: np.ndarray) -> np.ndarray:
        """The real n-vector paired against β in the coordinate functions."""

    @abstractmethod
    def pairing_dbar(self, z: np.ndarray) -> np.ndarray:
        """C[..., j, l] = ∂c_j/∂z̄_l for the pairing vector c."""

    def scale(self, z: np.ndarray) -> np.ndarray:
        """1/(2ρ) on the Siegel domain."""
        return 1.0 / (2.0 * defining_function(DomainKind.SIEGEL, z))

    def scale_dbar(self, z: np.ndarray) -> np.ndarray:
        """∂/∂z̄_l of 1/(2ρ) = -∂̄_l ρ / (2ρ^2), with ∂̄ρ = (-z', i/2)."""
        rho = defining_function(DomainKind.SIEGEL, z)
        drho = np.empty_like(z)
        drho[..., :-1] = -z[..., :-1]
        drho[..., -1] = 0.5j
        return -drho / (2.0 * rho[..., None] ** 2)

    def moment_coords(self, z: np.ndarray) -> np.ndarray:
        """μ^G at coordinates, including the leading minus sign."""
        return -self.scale(z)[..., None] * self.pairing_vector(z)

    # --- fibers ---

    @abstractmethod
    def transporter(self, w: np.ndarray, z: np.ndarray) -> np.ndarray:
        """Parameter p with p·w = z, assuming w and z share a μ^G fiber."""

    @abstractmethod
    def section(self, mu: np.ndarray) -> np.ndarray:
        """A point whose μ^G equals `mu`; ValueError if `mu` is not attained."""

    def random_param(self, rng: np.random.Generator, size: int = 1, spread: float = 1.0) -> np.ndarray:
        return rng.uniform(-spread, spread, size=(size, self.n))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label})"


class QuasiEllipticAction(GroupAction):
    """
    E(n): the torus T^n acting on B^n by t·z = (t_1 z_1, ..., t_n z_n).

    μ(z) = -(1/(1-|z|^2)) (|z_1|^2, ..., |z_n|^2)
    """

    @property
    def kind(self) -> ActionKind:
        return ActionKind.QUASI_ELLIPTIC

    @property
    def domain_kind(self) -> DomainKind:
        return DomainKind.BALL

    def act_coords(self, param, z):
        return z * np.exp(1j * np.asarray(param, dtype=float))

    def field_coords(self, X, z):
        return 1j * np.asarray(X, dtype=float) * z

    def pairing_vector(self, z):
        return np.abs(z) ** 2

    def pairing_dbar(self, z):
        out = np.zeros(z.shape + (self.n,), dtype=complex)
        idx = np.arange(self.n)
        out[..., idx, idx] = z
        return out

    def scale(self, z):
        return 1.0 / defining_function(DomainKind.BALL, z)

    def scale_dbar(self, z):
        d = defining_function(DomainKind.BALL, z)
        return z / d[..., None] ** 2

    def transporter(self, w, z):
        return _phases(w, z)

    def section(self, mu):
        u = -np.asarray(mu, dtype=float)
        if np.any(u < 0):
            raise ValueError(f"{self.label} moment values must be <= 0, got {mu}")
        return np.sqrt(u / (1.0 + np.sum(u))).astype(complex)


class QuasiParabolicAction(GroupAction):
    """
    P(n): T^{n-1} x R acting by (t', h)·z = (t' z', z_n + h).

    μ(z) = -(1/(2ρ)) (2|z_1|^2, ..., 2|z_{n-1}|^2, 1)
    """

    @property
    def kind(self) -> ActionKind:
        return ActionKind.QUASI_PARABOLIC

    def act_coords(self, param, z):
        param = np.asarray(param, dtype=float)
        out = np.array(z, dtype=complex, copy=True)
        out[..., :-1] = z[..., :-1] * np.exp(1j * param[..., :-1])
        out[..., -1] = z[..., -1] + param[..., -1]
        return out

    def field_coords(self, X, z):
        X = np.asarray(X, dtype=float)
        out = np.empty(np.broadcast_shapes(np.shape(X), z.shape), dtype=complex)
        out[..., :-1] = 1j * X[..., :-1] * z[..., :-1]
        out[..., -1] = X[..., -1]
        return out

    def pairing_vector(self, z):
        c = np.ones(z.shape, dtype=float)
        c[..., :-1] = 2.0 * np.abs(z[..., :-1]) ** 2
        return c

    def pairing_dbar(self, z):
        out = np.zeros(z.shape + (self.n,), dtype=complex)
        idx = np.arange(self.n - 1)
        out[..., idx, idx] = 2.0 * z[..., :-1]
        return out

    def transporter(self, w, z):
        p = np.zeros(np.broadcast_shapes(w.shape, z.shape), dtype=float)
        p[..., :-1] = _phases(w[..., :-1], z[..., :-1])
        p[..., -1] = z[..., -1].real - w[..., -1].real
        return p

    def section(self, mu):
        mu = np.asarray(mu, dtype=float)
        if mu[-1] >= 0 or np.any(mu[:-1] > 0):
            raise ValueError(f"{self.label} moment values need mu_n < 0 and mu_j <= 0, got {mu}")
        rho = -1.0 / (2.0 * mu[-1])
        zp = np.sqrt(-mu[:-1] * rho)
        return np.concatenate([zp, [1j * (rho + np.sum(zp ** 2))]]).astype(complex)


class QuasiHyperbolicAction(GroupAction):
    """
    H(n): T^{n-1} x R_+ acting by (t', r)·z = (r^{1/2} t' z', r z_n).

    The R_+ factor is stored as log r.
    μ(z) = -(1/(2ρ)) (2|z_1|^2, ..., 2|z_{n-1}|^2, Re z_n)
    """

    @property
    def kind(self) -> ActionKind:
        return ActionKind.QUASI_HYPERBOLIC

    def act_coords(self, param, z):
        param = np.asarray(param, dtype=float)
        log_r = param[..., -1]
        out = np.array(z, dtype=complex, copy=True)
        out[..., :-1] = np.exp(0.5 * log_r)[..., None] * np.exp(1j * param[..., :-1]) * z[..., :-1]
        out[..., -1] = np.exp(log_r) * z[..., -1]
        return out

    def field_coords(self, X, z):
        X = np.asarray(X, dtype=float)
        out = np.empty(np.broadcast_shapes(np.shape(X), z.shape), dtype=complex)
        out[..., :-1] = (0.5 * X[..., -1:] + 1j * X[..., :-1]) * z[..., :-1]
        out[..., -1] = X[..., -1] * z[..., -1]
        return out

    def pairing_vector(self, z):
        c = np.empty(z.shape, dtype=float)
        c[..., :-1] = 2.0 * np.abs(z[..., :-1]) ** 2
        c[..., -1] = z[..., -1].real
        return c

    def pairing_dbar(self, z):
        out = np.zeros(z.shape + (self.n,), dtype=complex)
        idx = np.arange(self.n - 1)
        out[..., idx, idx] = 2.0 * z[..., :-1]
        out[..., -1, -1] = 0.5
        return out

    def transporter(self, w, z):
        rho_w = defining_function(DomainKind.SIEGEL, w)
        rho_z = defining_function(DomainKind.SIEGEL, z)
        p = np.zeros(np.broadcast_shapes(w.shape, z.shape), dtype=float)
        p[..., :-1] = _phases(w[..., :-1], z[..., :-1])
        p[..., -1] = np.log(rho_z / rho_w)
        return p

    def section(self, mu):
        mu = np.asarray(mu, dtype=float)
        if np.any(mu[:-1] > 0):
            raise ValueError(f"{self.label} moment values need mu_j <= 0 for j < n, got {mu}")
        # the fiber is a ray in ρ; pick the representative with ρ = 1
        zp = np.sqrt(-mu[:-1])
        return np.concatenate([zp, [-2.0 * mu[-1] + 1j * (1.0 + np.sum(zp ** 2))]]).astype(complex)


class NilpotentAction(GroupAction):
    """
    N(n): R^{n-1} x R acting by (b, h)·z = (z' + b, z_n + h + 2i z'·b + i|b|^2).

    μ(z) = -(1/(2ρ)) (-4 Im z', 1)
    """

    @property
    def kind(self) -> ActionKind:
        return ActionKind.NILPOTENT

    def act_coords(self, param, z):
        param = np.asarray(param, dtype=float)
        b = param[..., :-1]
        out = np.array(z, dtype=complex, copy=True)
        out[..., :-1] = z[..., :-1] + b
        out[..., -1] = (
            z[..., -1] + param[..., -1]
            + 2j * np.sum(z[..., :-1] * b, axis=-1)
            + 1j * np.sum(b * b, axis=-1)
        )
        return out

    def field_coords(self, X, z):
        X = np.asarray(X, dtype=float)
        out = np.empty(np.broadcast_shapes(np.shape(X), z.shape), dtype=complex)
        out[..., :-1] = X[..., :-1]
        out[..., -1] = X[..., -1] + 2j * np.sum(X[..., :-1] * z[..., :-1], axis=-1)
        return out

    def pairing_vector(self, z):
        c = np.ones(z.shape, dtype=float)
        c[..., :-1] = -4.0 * z[..., :-1].imag
        return c

    def pairing_dbar(self, z):
        out = np.zeros(z.shape + (self.n,), dtype=complex)
        idx = np.arange(self.n - 1)
        # ∂̄(Im z) = i/2
        out[..., idx, idx] = -2j
        return out

    def transporter(self, w, z):
        p = np.zeros(np.broadcast_shapes(w.shape, z.shape), dtype=float)
        b = z[..., :-1].real - w[..., :-1].real
        p[..., :-1] = b
        p[..., -1] = z[..., -1].real - w[..., -1].real + 2.0 * np.sum(w[..., :-1].imag * b, axis=-1)
        return p

    def section(self, mu):
        mu = np.asarray(mu, dtype=float)
        if mu[-1] >= 0:
            raise ValueError(f"{self.label} moment values need mu_n < 0, got {mu}")
        rho = -1.0 / (2.0 * mu[-1])
        zp = 1j * mu[:-1] * rho / 2.0
        return np.concatenate([zp, [1j * (rho + np.sum(np.abs(zp) ** 2))]]).astype(complex)


class QuasiNilpotentAction(GroupAction):
    """
    N(n,k): T^k x R^{n-k-1} x R acting on z = (z_(1), z_(2), z_n) by
    (t, b, h)·z = (t z_(1), z_(2) + b, z_n + h + 2i z_(2)·b + i|b|^2).

    μ(z) = -(1/(2ρ)) (2|z_(1)|^2, -4 Im z_(2), 1), with 1 <= k <= n-2.
    """

    def __init__(self, n: int, k: int):
        super().__init__(n)
        if int(k) != k or not 1 <= k <= n - 2:
            raise ValueError(f"N(n,k) requires 1 <= k <= n-2, got n={n}, k={k}")
        self._k = int(k)

    @property
    def kind(self) -> ActionKind:
        return ActionKind.QUASI_NILPOTENT

    @property
    def k(self) -> int:
        return self._k

    def act_coords(self, param, z):
        k = self._k
        param = np.asarray(param, dtype=float)
        b = param[..., k:-1]
        out = np.array(z, dtype=complex, copy=True)
        out[..., :k] = z[..., :k] * np.exp(1j * param[..., :k])
        out[..., k:-1] = z[..., k:-1] + b
        out[..., -1] = (
            z[..., -1] + param[..., -1]
            + 2j * np.sum(z[..., k:-1] * b, axis=-1)
            + 1j * np.sum(b * b, axis=-1)
        )
        return out

    def field_coords(self, X, z):
        k = self._k
        X = np.asarray(X, dtype=float)
        out = np.empty(np.broadcast_shapes(np.shape(X), z.shape), dtype=complex)
        out[..., :k] = 1j * X[..., :k] * z[..., :k]
        out[..., k:-1] = X[..., k:-1]
        out[..., -1] = X[..., -1] + 2j * np.sum(X[..., k:-1] * z[..., k:-1], axis=-1)
        return out

    def pairing_vector(self, z):
        k = self._k
        c = np.ones(z.shape, dtype=float)
        c[..., :k] = 2.0 * np.abs(z[..., :k]) ** 2
        c[..., k:-1] = -4.0 * z[..., k:-1].imag
        return c

    def pairing_dbar(self, z):
        k = self._k
        out = np.zeros(z.shape + (self.n,), dtype=complex)
        tor = np.arange(k)
        out[..., tor, tor] = 2.0 * z[..., :k]
        heis = np.arange(k, self.n - 1)
        out[..., heis, heis] = -2j
        return out

    def transporter(self, w, z):
        k = self._k
        p = np.zeros(np.broadcast_shapes(w.shape, z.shape), dtype=float)
        p[..., :k] = _phases(w[..., :k], z[..., :k])
        b = z[..., k:-1].real - w[..., k:-1].real
        p[..., k:-1] = b
        p[..., -1] = z[..., -1].real - w[..., -1].real + 2.0 * np.sum(w[..., k:-1].imag * b, axis=-1)
        return p

    def section(self, mu):
        k = self._k
        mu = np.asarray(mu, dtype=float)
        if mu[-1] >= 0 or np.any(mu[:k] > 0):
            raise ValueError(f"{self.label} moment values need mu_n < 0 and mu_j <= 0 for j <= k, got {mu}")
        rho = -1.0 / (2.0 * mu[-1])
        z1 = np.sqrt(-mu[:k] * rho).astype(complex)
        z2 = 1j * mu[k:-1] * rho / 2.0
        zp = np.concatenate([z1, z2])
        return np.concatenate([zp, [1j * (rho + np.sum(np.abs(zp) ** 2))]]).astype(complex)


def create_action(kind: Union[ActionKind, str], n: int, k: Optional[int] = None) -> GroupAction:
    """
    Factory for the five actions.

    Args:
        kind: ActionKind or its string value ("elliptic", "parabolic", ...)
        n: Complex dimension
        k: Torus rank for the quasi-nilpotent action only

    Returns:
        The GroupAction instance
    """
    if isinstance(kind, str):
        try:
            kind = ActionKind(kind.lower())
        except ValueError:
            supported = ", ".join(f"'{a.value}'" for a in ActionKind)
            raise ValueError(f"Unknown action: '{kind}'. Supported: {supported}") from None
    if kind is ActionKind.QUASI_NILPOTENT:
        if k is None:
            raise ValueError("The quasi-nilpotent action needs k (1 <= k <= n-2)")
        return QuasiNilpotentAction(n, k)
    if k is not None:
        raise ValueError(f"k is only meaningful for the quasi-nilpotent action, got k={k} for {kind.value}")
    classes: Dict[ActionKind, type] = {
        ActionKind.QUASI_ELLIPTIC: QuasiEllipticAction,
        ActionKind.QUASI_PARABOLIC: QuasiParabolicAction,
        ActionKind.QUASI_HYPERBOLIC: QuasiHyperbolicAction,
        ActionKind.NILPOTENT: NilpotentAction,
    }
    return classes[kind](n)


def _wrap(template: PointLike, coords: np.ndarray) -> PointLike:
    if isinstance(template, Point):
        return Point(coords, template.domain)
    return coords


def act(g: GroupAction, p, z: PointLike) -> PointLike:
    """Apply the group element with chart parameter p to z."""
    coords = g.coords(z)
    out = g.act_coords(np.asarray(p, dtype=float), coords)
    return _wrap(z, out)


def exp_group(g: GroupAction, X, s: float) -> np.ndarray:
    """Chart parameter of exp(sX); linear in the additive chart."""
    X = np.asarray(X, dtype=float)
    if X.shape[-1] != g.n:
        raise ValueError(f"Lie algebra element must have length {g.n}, got {X.shape[-1]}")
    return s * X


def fundamental_field(g: GroupAction, X, z: PointLike) -> np.ndarray:
    """Holomorphic components of X♯ at z."""
    coords = g.coords(z)
    return g.field_coords(np.asarray(X, dtype=float), coords)


def fundamental_field_fd(g: GroupAction, X, z: PointLike, h: float = 1e-5) -> np.ndarray:
    """Centered difference (d/ds)|_0 act(exp(sX), z), O(h^2)."""
    coords = g.coords(z)
    X = np.asarray(X, dtype=float)
    forward = g.act_coords(exp_group(g, X, h), coords)
    backward = g.act_coords(exp_group(g, X, -h), coords)
    return (forward - backward) / (2.0 * h)


def orbit_transport(
    g: GroupAction,
    w: PointLike,
    z: PointLike,
    tol: float = 1e-9,
) -> Union[np.ndarray, NotInSameFiber]:
    """
    Group parameter carrying w to z, or NotInSameFiber.

    Fiber membership is decided in the μ^G image with the Euclidean norm.
    Torus phases left free by vanishing coordinates are returned as 0.
    """
    wc = g.coords(w)
    zc = g.coords(z)
    mismatch = float(np.linalg.norm(g.moment_coords(zc) - g.moment_coords(wc)))
    if mismatch > tol:
        logger.debug("%s: points not in the same fiber (mismatch %.3e)", g.label, mismatch)
        return NotInSameFiber(mismatch=mismatch, tol=tol)
    return g.transporter(wc, zc)
