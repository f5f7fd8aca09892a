"""
Spectral multipliers for β-quasi-elliptic symbols on B^n.

With s = (|z_1|^2, ..., |z_n|^2) the β-form is

    γ(p) = Γ(n+|p|+λ+1)/(p! Γ(λ+1)) ∫_simplex f(A s/(1-|s|)) s^p (1-|s|)^λ ds

and the moment form integrates f(u) u^p (1+|u|)^{-(λ+|p|+n+1)} over R_+^n
with the same prefactor. Both are weighted averages of f, so f ≡ 1 gives 1.
"""

import logging
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import gammaln

from ..models import BetaBasis, DomainKind, MultiIndex, SymbolSpec
from ..quadrature.axes import dirichlet_orthant_rule
from ..quadrature.ball import ChunkedRule
from ..quadrature.monte_carlo import MonteCarloEstimate, elliptic_gamma_sampler, monte_carlo
from ..quadrature.rules import QuadratureRule, gauss_jacobi_01, simplex_rule

logger = logging.getLogger(__name__)

Profile = Callable[[np.ndarray], np.ndarray]


def _log_prefactor(n: int, lam: float, p: np.ndarray) -> float:
    return float(gammaln(n + p.sum() + lam + 1) - np.sum(gammaln(p + 1)) - gammaln(lam + 1))


def _as_powers(p, n: int) -> np.ndarray:
    arr = np.asarray(p.p if isinstance(p, MultiIndex) else p, dtype=float).reshape(-1)
    if arr.shape[0] != n:
        raise ValueError(f"Multi-index has length {arr.shape[0]}, expected {n}")
    return arr


@lru_cache(maxsize=32)
def _beta_rule(n: int, lam: float, N: int) -> QuadratureRule:
    return simplex_rule(n, lam, N)


@lru_cache(maxsize=32)
def _moment_rule(n: int, lam: float, N: int) -> QuadratureRule:
    return dirichlet_orthant_rule(n, lam, N)


def _real_if_close(value) -> complex:
    value = complex(value)
    return value.real if value.imag == 0 else value


def gamma_elliptic_beta(f: Profile, beta: BetaBasis, lam: float, p, N: int = 40) -> complex:
    """
    β-form on the simplex nodes of the ball rule, so the result matches
    the Toeplitz diagonal node for node. Exact when s^p·f(A s/(1-|s|)) is
    a polynomial of degree below 2N.
    """
    n = beta.n
    powers = _as_powers(p, n)
    rule = _beta_rule(n, float(lam), int(N))
    s = rule.nodes
    u = s / (1.0 - np.sum(s, axis=1))[:, None]
    values = np.asarray(f(u @ beta.matrix.T)) * np.prod(s ** powers, axis=1)
    return _real_if_close(np.exp(_log_prefactor(n, lam, powers)) * np.sum(rule.weights * values))


def gamma_elliptic_moment(
    f: Profile,
    lam: float,
    p,
    N: int = 40,
    rule: Optional[QuadratureRule] = None,
) -> complex:
    """Moment form over R_+^n; f receives the n moment coordinates."""
    n = len(p)
    return _moment_integral(lambda u: f(u), n, lam, p, N, rule)


def gamma_elliptic_Abeta(
    f: Profile,
    beta: BetaBasis,
    lam: float,
    p,
    N: int = 40,
    rule: Optional[QuadratureRule] = None,
) -> complex:
    """Moment form with the composed profile f(A(β)u)."""
    return _moment_integral(lambda u: f(u @ beta.matrix.T), beta.n, lam, p, N, rule)


def _moment_integral(g, n: int, lam: float, p, N: int, rule: Optional[QuadratureRule]) -> complex:
    powers = _as_powers(p, n)
    rule = rule or _moment_rule(n, float(lam), int(N))
    if rule.dim != n:
        raise ValueError(f"Orthant rule has dimension {rule.dim}, expected {n}")
    u = rule.nodes
    log_density = np.log(u) @ powers - (lam + powers.sum() + n + 1) * np.log1p(np.sum(u, axis=1))
    weights = rule.weights * np.exp(log_density + _log_prefactor(n, lam, powers))
    return _real_if_close(np.sum(weights * np.asarray(g(u))))


@lru_cache(maxsize=32)
def _direction_rule(n: int, N: int) -> QuadratureRule:
    """Directions σ on the standard simplex |σ| = 1, uniform weight."""
    if n == 1:
        return QuadratureRule(np.ones((1, 1)), np.ones(1), "point")
    base = simplex_rule(n - 1, 0.0, N)
    sigma = np.concatenate([base.nodes, 1.0 - np.sum(base.nodes, axis=1, keepdims=True)], axis=1)
    return QuadratureRule(np.clip(sigma, 0.0, None), base.weights, f"directions n={n} N={N}")


def gamma_elliptic_moment_radial(
    f: Profile,
    lam: float,
    p,
    N: int = 40,
    beta: Optional[BetaBasis] = None,
) -> complex:
    """
    Moment form in radius and direction, u = Rσ with |σ| = 1.

    With R = t/(1-t) the density becomes t^{|p|+n-1}(1-t)^λ σ^p, so a
    Gauss-Jacobi rule in t and a uniform simplex rule in σ give an
    evaluation whose nodes share nothing with the β-form or the Dirichlet
    orthant rule. With `beta`, f receives A(β)u.
    """
    n = len(p) if beta is None else beta.n
    powers = _as_powers(p, n)
    radial = gauss_jacobi_01(int(N), float(lam), 0.0)
    t = radial.nodes[:, 0]
    directions = _direction_rule(n, int(N))
    sigma = directions.nodes
    u = ((t / (1.0 - t))[:, None, None] * sigma[None, :, :]).reshape(-1, n)
    args = u if beta is None else u @ beta.matrix.T
    values = np.asarray(f(args)).reshape(t.shape[0], sigma.shape[0])
    radial_w = radial.weights * t ** (powers.sum() + n - 1)
    direction_w = directions.weights * np.prod(sigma ** powers, axis=1)
    total = radial_w @ values @ direction_w
    return _real_if_close(np.exp(_log_prefactor(n, lam, powers)) * total)


def gamma_elliptic_monte_carlo(f: Profile, lam: float, p, samples: int = 100000, seed: int = 0) -> MonteCarloEstimate:
    """γ as E[f(u)] under the exact Dirichlet pushforward sampler."""
    return monte_carlo(elliptic_gamma_sampler(list(p), lam), f, samples, seed)


def diagonal_vs_gamma(s: SymbolSpec, lam: float, d: int, rule: ChunkedRule, radial_N: Optional[int] = None) -> float:
    """
    max over |p| <= d of |M[p][p] - γ(p)| for the assembled Toeplitz matrix
    of an elliptic-family symbol. γ uses the rule's own radial order
    unless radial_N is given.
    """
    from ..toeplitz import assemble_toeplitz

    if s.action.domain_kind is not DomainKind.BALL:
        raise ValueError(f"diagonal_vs_gamma needs a quasi-elliptic symbol, got {s.action.label}")
    matrix = assemble_toeplitz(s, lam, d, rule)
    diag = matrix.diagonal()
    gammas = np.array([gamma_elliptic_beta(s.profile, s.beta, lam, b, radial_N or rule.radial_order) for b in matrix.basis])
    residual = float(np.max(np.abs(diag - gammas)))
    logger.info("diagonal vs gamma for '%s' (d=%d): %.3e", s.name, d, residual)
    return residual


def closed_form_defining_gamma(n: int, lam: float, p: Sequence[int]) -> float:
    """γ for a = 1 - |z|^2: (λ+1)/(λ+|p|+n+1)."""
    return (lam + 1.0) / (lam + sum(p) + n + 1.0)
