"""
Moment maps, their projections to subgroups, and β-symbols.

For a MASG G with moment map μ^G and a linearly independent set β with
matrix A(β), the subgroup H = exp(R<β>) has moment map μ^H = ι*∘μ^G and
the coordinate functions a_j = -<μ^G, v_j> generate the β-symbols
a = f(a_1, ..., a_m).
"""

import logging
from typing import Callable, Union

import numpy as np
from scipy.linalg import null_space

from .domains import PointLike, sample_points
from .group_actions import GroupAction
from .models import (
    BasisError,
    BetaBasis,
    FiberWitness,
    ORTHOGONALITY_TOL,
    Partition,
    PartitionError,
    Point,
    SymbolSpec,
    WitnessNotFound,
)
from .symplectic import ScalarField

logger = logging.getLogger(__name__)

# Acceptance thresholds for a fiber witness
WITNESS_MOMENT_TOL = 1e-10
WITNESS_MIN_GAP = 0.1


def moment_masg(g: GroupAction, z: PointLike) -> np.ndarray:
    """
    μ^G(z), with the leading minus sign of the closed forms.

    E(n): -(1/(1-|z|^2)) (|z_1|^2, ..., |z_n|^2); the Siegel actions use
    -(1/(2ρ)) times their pairing vectors.
    """
    return g.moment_coords(g.coords(z))


def moment_component(g: GroupAction, X) -> ScalarField:
    """μ_X = <μ^G, X> as a ScalarField with closed-form ∂̄."""
    X = np.asarray(X, dtype=float)

    def value(z: np.ndarray) -> float:
        return float(g.moment_coords(z) @ X)

    def dbar(z: np.ndarray) -> np.ndarray:
        c = g.pairing_vector(z)
        cbar = g.pairing_dbar(z)
        return -(g.scale_dbar(z) * (c @ X) + g.scale(z) * (X @ cbar))

    return ScalarField(value, dbar, name=f"mu_X[{g.label}]")


def project_orthogonal(beta: BetaBasis, s) -> np.ndarray:
    """
    ι*(s) = Σ_j <s, v_j>/<v_j, v_j> v_j for pairwise orthogonal β.

    Works on arrays of shape (..., n).
    """
    if not beta.is_orthogonal(ORTHOGONALITY_TOL):
        raise BasisError("project_orthogonal needs a pairwise orthogonal β; use project_span")
    A = beta.matrix
    s = np.asarray(s, dtype=float)
    coeffs = (s @ A.T) / np.sum(A * A, axis=1)
    return coeffs @ A


def project_span(beta: BetaBasis, s) -> np.ndarray:
    """Orthogonal projection onto span(β) for any independent β: Aᵀ(AAᵀ)^{-1}A."""
    A = beta.matrix
    s = np.asarray(s, dtype=float)
    coeffs = np.linalg.solve(A @ A.T, (s @ A.T).T).T
    return coeffs @ A


def moment_subgroup(g: GroupAction, beta: BetaBasis, z: PointLike) -> np.ndarray:
    """μ^H(z) for H = exp(R<β>), β orthogonal."""
    _check_dims(g, beta)
    return project_orthogonal(beta, moment_masg(g, z))


def coordinate_functions(g: GroupAction, beta: BetaBasis, z: PointLike) -> np.ndarray:
    """
    (a_1(z), ..., a_m(z)) with a_j = -<μ^G(z), v_j>.

    E(2), β = {(1,1)}, z = (1/2, 0) gives a_1 = 1/3.
    """
    _check_dims(g, beta)
    return -moment_masg(g, z) @ beta.matrix.T


def eval_symbol(s: SymbolSpec, z: PointLike) -> np.ndarray:
    """a(z) = f(a_1(z), ..., a_m(z)); vectorized over leading axes."""
    value = np.asarray(s.profile(coordinate_functions(s.action, s.beta, z)))
    return value if value.ndim else value[()]


def symbol_on_coords(s: SymbolSpec) -> Callable[[np.ndarray], np.ndarray]:
    """The symbol as a plain function of coordinate arrays (no domain checks)."""
    A = s.beta.matrix
    g = s.action

    def a(z: np.ndarray) -> np.ndarray:
        return np.asarray(s.profile(-g.moment_coords(z) @ A.T))

    return a


def basis_change_matrix(beta: BetaBasis, beta_prime: BetaBasis, tol: float = 1e-10) -> np.ndarray:
    """
    C = A(β)·pinv(A(β')), so that A(β) = C·A(β') when the spans agree.

    Raises BasisError if β and β' span different subspaces.
    """
    if beta.n != beta_prime.n or beta.m != beta_prime.m:
        raise BasisError(
            f"Bases have shapes {beta.matrix.shape} and {beta_prime.matrix.shape}"
        )
    C = beta.matrix @ np.linalg.pinv(beta_prime.matrix)
    residual = float(np.max(np.abs(C @ beta_prime.matrix - beta.matrix)))
    if residual > tol * max(1.0, float(np.max(np.abs(beta.matrix)))):
        raise BasisError(f"β and β' span different subspaces (residual {residual:.3e})")
    return C


def _block_rows(parts, n: int) -> np.ndarray:
    rows = []
    start = 0
    for size in parts:
        row = np.zeros(n)
        row[start:start + size] = 1.0
        rows.append(row)
        start += size
    return np.array(rows)


def partition_beta_elliptic(k: Partition) -> BetaBasis:
    """β(k): v_j = (0, 1_{k_j}, 0) for a partition k of n."""
    return BetaBasis(_block_rows(k.parts, k.total))


def partition_beta_parabolic(k: Partition) -> BetaBasis:
    """
    β(k) for k = (k', 1) with k' a partition of n-1; the last vector is e_n.

    For n = 1, k' is empty: k = (1,) and β = {e_1}.
    """
    if k.parts[-1] != 1:
        raise PartitionError(f"Parabolic partitions must end in a part equal to 1, got {k.parts}")
    return BetaBasis(_block_rows(k.parts, k.total))


def partition_beta_quasinilpotent(alpha: Partition, n: int) -> BetaBasis:
    """β(α̂) for α̂ = (α, 1, ..., 1): blocks of α on the torus part, then I_{n-k}."""
    k = alpha.total
    if not 1 <= k <= n - 2:
        raise PartitionError(f"α must partition k with 1 <= k <= n-2, got k={k}, n={n}")
    return BetaBasis(_block_rows(tuple(alpha.parts) + (1,) * (n - k), n))


def fiber_witness(
    g: GroupAction,
    beta: BetaBasis,
    discriminator: Callable[[Point], float],
    trials: int = 200,
    seed: int = 0,
) -> Union[FiberWitness, WitnessNotFound]:
    """
    Search for z, w with equal μ^H but discriminator values more than 0.1 apart.

    Each trial fixes μ^G(z) at a random z, moves it along ker A(β) (which
    leaves μ^H unchanged), builds a point on the moved fiber with the
    action's section and finally applies a random element of G.
    """
    _check_dims(g, beta)
    rng = np.random.default_rng(seed)
    domain = g.domain()
    kernel = null_space(beta.matrix)
    best_gap = 0.0
    if kernel.shape[1] == 0:
        logger.info("%s: β spans R^%d, no fiber directions to explore", g.label, g.n)
        return WitnessNotFound(trials=trials, best_gap=0.0)

    for attempt in range(1, trials + 1):
        zc = sample_points(domain.kind, g.n, 1, rng)[0]
        y = g.moment_coords(zc)
        step = rng.uniform(0.1, 2.0) * (kernel @ rng.normal(size=kernel.shape[1]))
        try:
            wc = g.section(y + step)
            wc = g.act_coords(g.random_param(rng)[0], wc)
            z, w = Point(zc, domain), Point(wc, domain)
        except ValueError:
            continue
        moment_gap = float(np.linalg.norm(
            project_span(beta, g.moment_coords(zc)) - project_span(beta, g.moment_coords(wc))
        ))
        gap = abs(float(discriminator(z)) - float(discriminator(w)))
        if moment_gap < WITNESS_MOMENT_TOL:
            best_gap = max(best_gap, gap)
            if gap > WITNESS_MIN_GAP:
                logger.info("%s: fiber witness found after %d attempts (gap %.3f)", g.label, attempt, gap)
                return FiberWitness(z=z, w=w, moment_gap=moment_gap, discriminator_gap=gap, attempts=attempt)
    logger.info("%s: no fiber witness in %d attempts (best gap %.3e)", g.label, trials, best_gap)
    return WitnessNotFound(trials=trials, best_gap=best_gap)


def _check_dims(g: GroupAction, beta: BetaBasis) -> None:
    if beta.n != g.n:
        raise BasisError(f"β lives in R^{beta.n} but {g.label} has dimension {g.n}")
