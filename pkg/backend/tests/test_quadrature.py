import sys
from pathlib import Path

import numpy as np
import pytest
from scipy.special import gamma

ROOT = Path(__file__).resolve().parents[2]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from backend.bergman.models import QuadratureError  # noqa: E402
from backend.bergman.quadrature import (  # noqa: E402
    ChunkedRule,
    HermiteAxis,
    LaguerreAxis,
    RationalAxis,
    ball_full_rule,
    ball_sampler,
    default_ball_orders,
    dirichlet_orthant_rule,
    gauss_hermite,
    gauss_jacobi_01,
    gauss_laguerre,
    monte_carlo,
    orthant_rule,
    siegel_full_rule,
    simplex_rule,
    tensor_product,
    trapezoid_angles,
)
from backend.bergman.quadrature.rules import QuadratureRule  # noqa: E402


def test_gauss_jacobi_order_one_is_midpoint():
    rule = gauss_jacobi_01(1, 0.0)
    assert rule.nodes[0, 0] == pytest.approx(0.5)
    assert rule.weights[0] == pytest.approx(1.0)
    assert rule.integrate(lambda t: t[:, 0]) == pytest.approx(0.5)


def test_gauss_jacobi_is_exact_for_beta_integrals():
    # ∫ t^3 (1-t)^2 dt = 3! 2! / 6!
    rule = gauss_jacobi_01(3, 2.0)
    assert rule.integrate(lambda t: t[:, 0] ** 3) == pytest.approx(1 / 60, rel=1e-13)


def test_laguerre_and_hermite_masses():
    assert gauss_laguerre(10, 2.5).weights.sum() == pytest.approx(gamma(3.5), rel=1e-12)
    assert gauss_hermite(10).weights.sum() == pytest.approx(np.sqrt(np.pi), rel=1e-12)


def test_rule_validation():
    with pytest.raises(QuadratureError):
        gauss_jacobi_01(0, 0.0)
    with pytest.raises(QuadratureError):
        gauss_laguerre(4, -1.5)
    with pytest.raises(QuadratureError):
        QuadratureRule(np.zeros(2), np.array([1.0, -1.0]))
    with pytest.raises(QuadratureError):
        trapezoid_angles(7)
    with pytest.raises(QuadratureError):
        tensor_product([])


def test_tensor_product_shapes():
    rule = tensor_product([gauss_jacobi_01(3, 0.0), gauss_hermite(4)])
    assert rule.size == 12
    assert rule.dim == 2


def test_simplex_rule_volume():
    # ∫_simplex (1-|s|)^λ ds = Γ(λ+1) / Γ(λ+n+1)
    rule = simplex_rule(3, 0.5, 4)
    assert rule.weights.sum() == pytest.approx(gamma(1.5) / gamma(4.5), rel=1e-12)


def test_dirichlet_orthant_rule_exact_case():
    # ∫ u_1 (1+u_1+u_2)^{-5} du = Γ(2)Γ(1)Γ(2)/Γ(5)
    rule = dirichlet_orthant_rule(2, 1.0, 4)
    value = rule.integrate(lambda u: u[:, 0] * (1.0 + u.sum(axis=1)) ** -5)
    assert value == pytest.approx(1 / 24, abs=1e-10)


def test_orthant_axes():
    rational = orthant_rule([RationalAxis()], [20])
    assert rational.integrate(lambda u: (1.0 + u[:, 0]) ** -2) == pytest.approx(1.0, abs=1e-12)
    laguerre = orthant_rule([LaguerreAxis(alpha=1.0)], [8])
    assert laguerre.integrate(lambda u: u[:, 0] * np.exp(-u[:, 0])) == pytest.approx(1.0, rel=1e-10)
    hermite = orthant_rule([HermiteAxis()], [8])
    assert hermite.integrate(lambda x: np.exp(-x[:, 0] ** 2)) == pytest.approx(np.sqrt(np.pi), rel=1e-10)


@pytest.mark.parametrize("n,lam", [(1, 0.0), (2, 0.5), (3, 1.0)])
def test_ball_rule_has_unit_mass(n, lam):
    rule = ball_full_rule(n, lam, radial_N=4, angular_N=4)
    assert rule.integrate(lambda z: np.ones(z.shape[0])) == pytest.approx(1.0, abs=1e-12)


def test_ball_rule_integrates_monomial_norms():
    rule = ball_full_rule(2, 0.5, radial_N=4, angular_N=4)
    value = rule.integrate(lambda z: np.abs(z[:, 0]) ** 2)
    assert value == pytest.approx(1 / 3.5, rel=1e-12)


def test_ball_rule_chunks_cover_every_node_once():
    rule = ball_full_rule(2, 0.0, radial_N=3, angular_N=4, chunk_size=1024)
    sizes = [z.shape[0] for z, _ in rule.chunks(chunk_size=50)]
    assert sum(sizes) == rule.size
    assert rule.to_quadrature_rule().dim == 4


def test_chunked_rule_is_abstract():
    base = ball_full_rule(1, 0.0, radial_N=2, angular_N=2)
    with pytest.raises(TypeError, match="abstract"):
        ChunkedRule(n=1, lam=0.0, radial=base.radial, angles=base.angles, angular_dims=1, radial_scale=1.0)


def test_default_orders_shrink_with_dimension():
    assert default_ball_orders(1) == (48, 96)
    assert default_ball_orders(2) == (32, 48)
    assert default_ball_orders(3) == (10, 20)
    assert default_ball_orders(5) == (5, 12)
    rule = ball_full_rule(3, 0.0)
    assert rule.size == 10 ** 3 * 20 ** 3
    with pytest.raises(QuadratureError):
        default_ball_orders(0)


@pytest.mark.parametrize("n,lam", [(1, 0.0), (2, 0.0), (2, 1.5)])
def test_siegel_rule_has_unit_mass(n, lam):
    rule = siegel_full_rule(n, lam, radial_N=8, angular_N=4)
    assert rule.integrate(lambda z: np.ones(z.shape[0])) == pytest.approx(1.0, abs=1e-10)


def test_monte_carlo_is_seeded_and_consistent():
    f = lambda z: np.abs(z[:, 0]) ** 2  # noqa: E731
    first = monte_carlo(ball_sampler(2, 0.0), f, 4000, seed=7)
    second = monte_carlo(ball_sampler(2, 0.0), f, 4000, seed=7)
    assert first.mean == second.mean
    assert first.within(1 / 3)
    with pytest.raises(QuadratureError):
        monte_carlo(ball_sampler(2, 0.0), f, 1)
