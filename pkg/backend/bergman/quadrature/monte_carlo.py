"""
Seeded Monte Carlo estimates with standard errors.

Samplers are exact for their target laws, so the estimates are unbiased:
- dv_λ on B^n: s = (|z_1|^2, ..., |z_n|^2) ~ Dirichlet(1, ..., 1, λ+1)
  with independent uniform phases,
- the elliptic spectral measure: s ~ Dirichlet(p+1, λ+1) pushed to
  u = s/(1-|s|), so that γ = E[f(u)].
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Sequence

import numpy as np

from ..models import QuadratureError

logger = logging.getLogger(__name__)

Sampler = Callable[[np.random.Generator, int], np.ndarray]


@dataclass
class MonteCarloEstimate:
    """Sample mean with its standard error."""
    mean: complex
    stderr: float
    samples: int
    seed: int

    def within(self, value: float, sigmas: float = 4.0) -> bool:
        return bool(abs(self.mean - value) <= sigmas * self.stderr)

    def to_dict(self) -> Dict[str, Any]:
        mean = complex(self.mean)
        return {
            "mean": mean.real if mean.imag == 0 else {"re": mean.real, "im": mean.imag},
            "stderr": self.stderr,
            "samples": self.samples,
            "seed": self.seed,
        }


def ball_sampler(n: int, lam: float) -> Sampler:
    """Exact sampler for the probability measure dv_λ on B^n."""
    alpha = np.ones(n + 1)
    alpha[-1] = lam + 1.0

    def sample(rng: np.random.Generator, size: int) -> np.ndarray:
        s = rng.dirichlet(alpha, size=size)[:, :n]
        theta = rng.uniform(0.0, 2.0 * np.pi, size=(size, n))
        return np.sqrt(s) * np.exp(1j * theta)

    return sample


def elliptic_gamma_sampler(p: Sequence[int], lam: float) -> Sampler:
    """Exact sampler for u with density ∝ u^p/(1+|u|)^{λ+|p|+n+1} on R_+^n."""
    p = np.asarray(p, dtype=float)
    alpha = np.concatenate([p + 1.0, [lam + 1.0]])

    def sample(rng: np.random.Generator, size: int) -> np.ndarray:
        s = rng.dirichlet(alpha, size=size)
        return s[:, :-1] / s[:, -1:]

    return sample


def monte_carlo(sampler: Sampler, f: Callable[[np.ndarray], np.ndarray], N: int, seed: int = 0) -> MonteCarloEstimate:
    """
    Estimate E[f(X)] for X drawn by `sampler`.

    Deterministic for a given seed.
    """
    if int(N) != N or N < 2:
        raise QuadratureError(f"Monte Carlo needs at least 2 samples, got {N}")
    rng = np.random.default_rng(seed)
    values = np.asarray(f(sampler(rng, int(N))))
    mean = np.mean(values)
    stderr = float(np.std(values, ddof=1) / np.sqrt(N))
    logger.debug("monte carlo N=%d seed=%d: mean=%s stderr=%.3e", N, seed, mean, stderr)
    return MonteCarloEstimate(mean=mean, stderr=stderr, samples=int(N), seed=seed)
