"""
Spectral multipliers for the Siegel-domain families.

The parabolic (k = n-1), nilpotent (k = 0) and quasi-nilpotent (general k)
β-forms share one integral over R_+^k x R^{n-k-1} x R_+:

    P_β ∫ f((<(2r, 2x', 1), v_j>/(2x_n))_j) r^p
          e^{-2ξ(x_n + |r|) - |-√ξ x' + y'|^2} x_n^λ dr dx' dx_n

    P_β = 2^{λ+|p|+k+1} ξ^{λ+|p|+(n+k+1)/2} / (π^{(n-k-1)/2} p! Γ(λ+1))

The engine integrates it on a product Gauss rule: a Laguerre axis with
α = p_j per torus coordinate, a Hermite axis per Heisenberg coordinate
and a Laguerre axis with α = λ for x_n. The moment forms are evaluated on
the same nodes pushed forward by u = (r/x_n, x'/x_n, 1/(2x_n)), with the
displayed u-integrand, its prefactor and the Jacobian combined in log
space. moment_form_direct integrates the same u-integrand on a rule built
in u itself, as an independent check of that pushforward.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.special import gammaln

from ..models import BetaBasis, MultiIndex, QuadratureError
from ..quadrature.axes import HermiteAxis, JacobiAxis, LaguerreAxis, orthant_rule
from ..quadrature.rules import QuadratureRule, gauss_hermite, gauss_laguerre, tensor_product

logger = logging.getLogger(__name__)

Profile = Callable[[np.ndarray], np.ndarray]

DEFAULT_LAGUERRE = 64
DEFAULT_HERMITE = 64


@lru_cache(maxsize=128)
def _product_rule(p: Tuple[float, ...], h: int, lam: float, NL: int, NH: int) -> QuadratureRule:
    rules = [gauss_laguerre(NL, pj) for pj in p]
    rules += [gauss_hermite(NH)] * h
    rules.append(gauss_laguerre(NL, lam))
    rule = tensor_product(rules)
    logger.debug("Siegel spectral rule k=%d h=%d: %d nodes", len(p), h, rule.size)
    return rule


@dataclass
class SiegelSpectralEngine:
    """
    γ integrals for N(n,k)-type families.

    Attributes:
        n: Complex dimension
        k: Torus rank (n-1 parabolic, 0 nilpotent)
        lam: Weight λ > -1
        laguerre_n, hermite_n: Gauss orders
    """
    n: int
    k: int
    lam: float
    laguerre_n: int = DEFAULT_LAGUERRE
    hermite_n: int = DEFAULT_HERMITE

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.n - 1:
            raise ValueError(f"Torus rank must satisfy 0 <= k <= n-1, got k={self.k}, n={self.n}")
        if not self.lam > -1:
            raise ValueError(f"Weight must satisfy lambda > -1, got {self.lam}")

    @property
    def h(self) -> int:
        """Number of Heisenberg coordinates."""
        return self.n - self.k - 1

    def _check(self, p, yprime, xi: float) -> Tuple[np.ndarray, np.ndarray]:
        p = np.asarray(p.p if isinstance(p, MultiIndex) else p, dtype=float).reshape(-1)
        y = np.asarray(yprime, dtype=float).reshape(-1)
        if p.shape[0] != self.k:
            raise ValueError(f"p must have length k={self.k}, got {p.shape[0]}")
        if y.shape[0] != self.h:
            raise ValueError(f"y' must have length n-k-1={self.h}, got {y.shape[0]}")
        if not xi > 0:
            raise ValueError(f"ξ must be positive, got {xi}")
        return p, y

    def _nodes(self, p: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        rule = _product_rule(tuple(p), self.h, float(self.lam), int(self.laguerre_n), int(self.hermite_n))
        nodes = rule.nodes
        rho = nodes[:, :self.k]
        s = nodes[:, self.k:self.k + self.h]
        t = nodes[:, -1]
        return rho, s, t, rule.weights

    def _log_common(self, p: np.ndarray) -> float:
        return float(-(self.h / 2.0) * np.log(np.pi) - np.sum(gammaln(p + 1)) - gammaln(self.lam + 1))

    def beta_form(self, f: Profile, A: np.ndarray, p, yprime, xi: float) -> complex:
        """The β-form with profile arguments A·(2r, 2x', 1)/(2x_n)."""
        p, y = self._check(p, yprime, xi)
        rho, s, t, w = self._nodes(p)
        r = rho / (2 * xi)
        x_prime = (y - s) / np.sqrt(xi)
        x_n = t / (2 * xi)
        vec = np.concatenate([2 * r, 2 * x_prime, np.ones((t.shape[0], 1))], axis=1) / (2 * x_n)[:, None]
        values = np.asarray(f(vec @ A.T))
        psum = p.sum()
        log_prefactor = (
            (self.lam + psum + self.k + 1) * np.log(2.0)
            + (self.lam + psum + (self.n + self.k + 1) / 2.0) * np.log(xi)
            + self._log_common(p)
        )
        # r = ρ/(2ξ) per torus axis, x' = (y' - s)/√ξ, x_n = t/(2ξ)
        log_jacobian = -(psum + self.k + self.lam + 1) * np.log(2 * xi) - (self.h / 2.0) * np.log(xi)
        return _real_if_close(np.exp(log_prefactor + log_jacobian) * np.sum(w * values))

    def moment_form(self, f: Profile, A: Optional[np.ndarray], p, yprime, xi: float) -> complex:
        """
        The moment-coordinate form; f receives u (or A·u when A is given).
        """
        p, y = self._check(p, yprime, xi)
        rho, s, t, w = self._nodes(p)
        sq = np.sqrt(xi)
        u1 = rho / t[:, None]
        u2 = 2 * sq * (y - s) / t[:, None]
        un = xi / t
        u = np.concatenate([u1, u2, un[:, None]], axis=1)
        psum = p.sum()

        log_integrand = (
            np.log(u1) @ p
            - (xi / un) * (1.0 + np.sum(u1, axis=1))
            - np.sum((-sq * u2 / (2 * un[:, None]) + y) ** 2, axis=1)
            - (self.lam + psum + self.n + 1) * np.log(un)
        )
        log_jacobian = (
            -self.k * np.log(t)
            + self.h * (np.log(2 * sq) - np.log(t))
            + np.log(xi) - 2 * np.log(t)
        )
        log_rule_weight = np.log(rho) @ p - np.sum(rho, axis=1) - np.sum(s * s, axis=1) + self.lam * np.log(t) - t
        log_prefactor = (
            (self.lam + psum + (self.n + self.k + 1) / 2.0) * np.log(xi)
            - self.h * np.log(2.0)
            + self._log_common(p)
        )
        plain = w * np.exp(log_integrand + log_jacobian - log_rule_weight + log_prefactor)
        args = u if A is None else u @ A.T
        return _real_if_close(np.sum(plain * np.asarray(f(args))))

    def moment_form_direct(self, f: Profile, A: Optional[np.ndarray], p, yprime, xi: float) -> complex:
        """
        The moment form on its own rule in u.

        u_n = ξt/(1-t) with a Jacobi axis for (1-t)^λ; given u_n, each
        torus coordinate is a Laguerre axis at scale ξ/u_n and each
        Heisenberg coordinate a Hermite axis centred at 2u_n y'/√ξ with
        width 2u_n/√ξ. No node is shared with beta_form or moment_form.
        """
        p, y = self._check(p, yprime, xi)
        sq = np.sqrt(xi)
        t, wt = JacobiAxis(a=self.lam).nodes_weights(int(self.laguerre_n))
        un = xi * t / (1.0 - t)
        axes = [LaguerreAxis(alpha=pj) for pj in p] + [HermiteAxis()] * self.h
        orders = [int(self.laguerre_n)] * self.k + [int(self.hermite_n)] * self.h
        if axes:
            inner = orthant_rule(axes, orders)
            X, wx = inner.nodes, inner.weights
        else:
            X, wx = np.zeros((1, 0)), np.ones(1)

        T, I = un.shape[0], wx.shape[0]
        u1 = X[None, :, :self.k] * (un / xi)[:, None, None]
        u2 = (2 * un / sq)[:, None, None] * (y[None, None, :] + X[None, :, self.k:])
        u_last = np.broadcast_to(un[:, None, None], (T, I, 1))
        u = np.concatenate([u1, u2, u_last], axis=2).reshape(-1, self.n)
        u1, u2 = u[:, :self.k], u[:, self.k:-1]
        un_flat = u[:, -1]
        psum = p.sum()

        log_integrand = (
            np.log(u1) @ p
            - (xi / un_flat) * (1.0 + np.sum(u1, axis=1))
            - np.sum((-sq * u2 / (2 * un_flat[:, None]) + y) ** 2, axis=1)
            - (self.lam + psum + self.n + 1) * np.log(un_flat)
        )
        log_prefactor = (
            (self.lam + psum + (self.n + self.k + 1) / 2.0) * np.log(xi)
            - self.h * np.log(2.0)
            + self._log_common(p)
        )
        # du_n = ξ dt/(1-t)^2, du_(1) = (u_n/ξ) dX, du_(2) = (2u_n/√ξ) dX
        log_jacobian = (
            np.log(xi) - 2 * np.log1p(-t)
            + self.k * np.log(un / xi)
            + self.h * np.log(2 * un / sq)
        )
        log_w = (np.log(wt) + log_jacobian)[:, None] + np.log(wx)[None, :]
        plain = np.exp(log_w.reshape(-1) + log_integrand + log_prefactor)
        args = u if A is None else u @ A.T
        return _real_if_close(np.sum(plain * np.asarray(f(args))))


def _real_if_close(value) -> complex:
    value = complex(value)
    return value.real if value.imag == 0 else value


def _engine(n: int, k: int, lam: float, laguerre_n: int, hermite_n: int) -> SiegelSpectralEngine:
    return SiegelSpectralEngine(n=n, k=k, lam=lam, laguerre_n=laguerre_n, hermite_n=hermite_n)


def _beta_dims(beta: BetaBasis, n: Optional[int] = None) -> int:
    if n is not None and beta.n != n:
        raise QuadratureError(f"β lives in R^{beta.n}, expected R^{n}")
    return beta.n


# --- parabolic: k = n-1, no y' ---

def gamma_parabolic_beta(f, beta: BetaBasis, lam: float, p, xi: float,
                         laguerre_n: int = DEFAULT_LAGUERRE) -> complex:
    n = _beta_dims(beta)
    return _engine(n, n - 1, lam, laguerre_n, 1).beta_form(f, beta.matrix, p, (), xi)


def gamma_parabolic_moment(f, lam: float, p: Sequence[int], xi: float,
                           laguerre_n: int = DEFAULT_LAGUERRE) -> complex:
    n = len(p) + 1
    return _engine(n, n - 1, lam, laguerre_n, 1).moment_form(f, None, p, (), xi)


def gamma_parabolic_Abeta(f, beta: BetaBasis, lam: float, p, xi: float,
                          laguerre_n: int = DEFAULT_LAGUERRE) -> complex:
    n = _beta_dims(beta)
    return _engine(n, n - 1, lam, laguerre_n, 1).moment_form(f, beta.matrix, p, (), xi)


# --- nilpotent: k = 0 ---

def gamma_nilpotent_beta(f, beta: BetaBasis, lam: float, yprime, xi: float,
                         laguerre_n: int = DEFAULT_LAGUERRE, hermite_n: int = DEFAULT_HERMITE) -> complex:
    n = _beta_dims(beta)
    return _engine(n, 0, lam, laguerre_n, hermite_n).beta_form(f, beta.matrix, (), yprime, xi)


def gamma_nilpotent_moment(f, lam: float, yprime, xi: float,
                           laguerre_n: int = DEFAULT_LAGUERRE, hermite_n: int = DEFAULT_HERMITE) -> complex:
    n = len(yprime) + 1
    return _engine(n, 0, lam, laguerre_n, hermite_n).moment_form(f, None, (), yprime, xi)


def gamma_nilpotent_Abeta(f, beta: BetaBasis, lam: float, yprime, xi: float,
                          laguerre_n: int = DEFAULT_LAGUERRE, hermite_n: int = DEFAULT_HERMITE) -> complex:
    n = _beta_dims(beta)
    return _engine(n, 0, lam, laguerre_n, hermite_n).moment_form(f, beta.matrix, (), yprime, xi)


# --- quasi-nilpotent: 1 <= k <= n-2 ---

def gamma_quasinilpotent_beta(f, beta: BetaBasis, lam: float, p, yprime, xi: float,
                              laguerre_n: int = DEFAULT_LAGUERRE, hermite_n: int = DEFAULT_HERMITE) -> complex:
    n = _beta_dims(beta)
    return _engine(n, len(p), lam, laguerre_n, hermite_n).beta_form(f, beta.matrix, p, yprime, xi)


def gamma_quasinilpotent_moment(f, lam: float, p, yprime, xi: float,
                                laguerre_n: int = DEFAULT_LAGUERRE, hermite_n: int = DEFAULT_HERMITE) -> complex:
    n = len(p) + len(yprime) + 1
    return _engine(n, len(p), lam, laguerre_n, hermite_n).moment_form(f, None, p, yprime, xi)


def gamma_quasinilpotent_Abeta(f, beta: BetaBasis, lam: float, p, yprime, xi: float,
                               laguerre_n: int = DEFAULT_LAGUERRE, hermite_n: int = DEFAULT_HERMITE) -> complex:
    n = _beta_dims(beta)
    return _engine(n, len(p), lam, laguerre_n, hermite_n).moment_form(f, beta.matrix, p, yprime, xi)


# --- moment forms on the independent u-rule ---

def gamma_siegel_moment_direct(f, lam: float, p, yprime, xi: float,
                               laguerre_n: int = DEFAULT_LAGUERRE, hermite_n: int = DEFAULT_HERMITE,
                               beta: Optional[BetaBasis] = None) -> complex:
    """
    Moment form of any Siegel family through moment_form_direct.

    k = len(p) torus and len(y') Heisenberg coordinates: parabolic has no
    y', nilpotent no p. With `beta`, f receives A(β)u.
    """
    n = len(p) + len(yprime) + 1
    A = None
    if beta is not None:
        _beta_dims(beta, n)
        A = beta.matrix
    return _engine(n, len(p), lam, laguerre_n, hermite_n).moment_form_direct(f, A, p, yprime, xi)
