import sys
import unittest
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[2]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from backend.bergman.group_actions import create_action  # noqa: E402
from backend.bergman.models import (  # noqa: E402
    BetaBasis,
    MetadataMismatchError,
    MultiIndex,
    QuadratureError,
    SymbolSpec,
)
from backend.bergman.profiles import GaussianProfile, RatioProfile, ReciprocalProfile  # noqa: E402
from backend.bergman.quadrature import ball_full_rule  # noqa: E402
from backend.bergman.toeplitz import (  # noqa: E402
    TREND_FLOOR,
    CommutatorTrend,
    ToeplitzMatrix,
    assemble_toeplitz,
    commutator_norm,
    commutator_trend,
    enumerate_basis,
    monomial_norm_sq,
    transport_symbol,
)


def _ones(z):
    return np.ones(z.shape[0])


def _re_z1(z):
    return z[:, 0].real


def _im_z1(z):
    return z[:, 0].imag


def test_monomial_norms():
    assert monomial_norm_sq(3, 0.5, MultiIndex((0, 0, 0))) == pytest.approx(1.0)
    assert monomial_norm_sq(1, 0.0, MultiIndex((2,))) == pytest.approx(1 / 3)
    assert monomial_norm_sq(2, 1.0, MultiIndex((1, 1))) == pytest.approx(1 / 20)
    with pytest.raises(ValueError):
        monomial_norm_sq(2, 0.0, MultiIndex((1,)))


def test_enumerate_basis_order_and_count():
    assert [b.p for b in enumerate_basis(2, 1)] == [(0, 0), (1, 0), (0, 1)]
    assert len(enumerate_basis(2, 2)) == 6
    assert len(enumerate_basis(3, 4)) == 35
    with pytest.raises(ValueError):
        enumerate_basis(2, -1)


def test_transport_symbol_at_origin():
    # φ(0) = (0, i), where Im w_n - |w'|^2 = 1
    def a(w):
        rho = w[..., -1].imag - np.sum(np.abs(w[..., :-1]) ** 2, axis=-1)
        return rho / (1.0 + rho)

    assert transport_symbol(a)(np.zeros((1, 2)))[0] == pytest.approx(0.5)


class SmallDiskMatrices(unittest.TestCase):
    """Exact small-degree matrices on the unit disk (n = 1, λ = 0)."""

    @classmethod
    def setUpClass(cls) -> None:
        cls.rule = ball_full_rule(1, 0.0, radial_N=8, angular_N=8)

    def test_constant_symbol_gives_identity(self) -> None:
        M = assemble_toeplitz(_ones, 0.0, 3, self.rule)
        self.assertLess(np.max(np.abs(M.entries - np.eye(M.dim))), 1e-12)

    def test_defining_function_symbol_is_diagonal(self) -> None:
        M = assemble_toeplitz(lambda z: 1.0 - np.abs(z[:, 0]) ** 2, 0.0, 3, self.rule)
        expected = [1 / (p + 2) for p in range(4)]
        self.assertLess(np.max(np.abs(M.diagonal() - expected)), 1e-12)
        self.assertLess(M.off_diagonal_max(), 1e-12)

    def test_real_part_off_diagonal_entry(self) -> None:
        M = assemble_toeplitz(_re_z1, 0.0, 1, self.rule)
        self.assertAlmostEqual(M.entries[0, 1].real, 1 / (2 * np.sqrt(2)), places=12)
        self.assertLess(M.hermitian_residual(), 1e-12)

    def test_real_and_imaginary_parts_do_not_commute(self) -> None:
        A = assemble_toeplitz(_re_z1, 0.0, 2, self.rule)
        B = assemble_toeplitz(_im_z1, 0.0, 2, self.rule)
        norm = commutator_norm(A, B, buffer=0)
        self.assertGreater(norm, 0.01)
        self.assertAlmostEqual(norm, 0.141639, places=5)


def test_elliptic_symbols_are_diagonal_and_commute():
    g = create_action("elliptic", 2)
    rule = ball_full_rule(2, 0.5, radial_N=10, angular_N=10)
    beta = BetaBasis.from_rows([[1.0, 2.0]])
    A = assemble_toeplitz(SymbolSpec(g, beta, RatioProfile(), name="ratio"), 0.5, 4, rule)
    B = assemble_toeplitz(SymbolSpec(g, BetaBasis.canonical(2), GaussianProfile(), name="gauss"), 0.5, 4, rule)
    assert A.off_diagonal_max() < 1e-10
    assert B.off_diagonal_max() < 1e-10
    assert commutator_norm(A, B) < 1e-12


@pytest.mark.parametrize("n, lam", [(1, 0.0), (2, 0.5), (3, 0.0)])
def test_fourier_assembly_matches_node_by_node_sums(n, lam):
    g = create_action("parabolic", max(n, 2)) if n > 1 else create_action("elliptic", 1)
    rule = ball_full_rule(n, lam, radial_N=5, angular_N=6)
    s = SymbolSpec(g, BetaBasis.canonical(n), RatioProfile(), name="ratio")
    fast = assemble_toeplitz(s, lam, 3, rule)
    slow = assemble_toeplitz(s, lam, 3, rule, fourier=False)
    assert np.allclose(fast.entries, slow.entries, rtol=0.0, atol=1e-12)
    assert np.allclose(
        assemble_toeplitz(_re_z1, lam, 3, rule).entries,
        assemble_toeplitz(_re_z1, lam, 3, rule, fourier=False).entries,
        rtol=0.0,
        atol=1e-12,
    )


def test_siegel_symbols_are_transported_and_hermitian():
    g = create_action("parabolic", 2)
    rule = ball_full_rule(2, 0.0, radial_N=8, angular_N=12)
    s = SymbolSpec(g, BetaBasis.from_rows([[0.0, 1.0]]), ReciprocalProfile(), name="parabolic")
    M = assemble_toeplitz(s, 0.0, 3, rule)
    assert M.hermitian_residual() < 1e-10
    assert np.all(M.diagonal().real > 0.0)
    assert np.all(M.diagonal().real < 1.0)


def test_assembly_checks_rule_metadata():
    rule = ball_full_rule(2, 0.0, radial_N=3, angular_N=4)
    with pytest.raises(QuadratureError):
        assemble_toeplitz(_ones, 1.0, 1, rule)
    g = create_action("elliptic", 3)
    with pytest.raises(QuadratureError):
        assemble_toeplitz(SymbolSpec(g, BetaBasis.canonical(3), RatioProfile()), 0.0, 1, rule)


def test_commutator_norm_checks_inputs():
    basis = enumerate_basis(1, 2)
    A = ToeplitzMatrix(np.diag([1.0, 2.0, 3.0]).astype(complex), basis, n=1, lam=0.0, degree=2)
    B = ToeplitzMatrix(np.diag([3.0, 1.0, 2.0]).astype(complex), basis, n=1, lam=0.0, degree=2)
    assert commutator_norm(A, B, buffer=0) == 0.0
    C = ToeplitzMatrix(np.eye(3, dtype=complex), basis, n=1, lam=0.5, degree=2)
    with pytest.raises(MetadataMismatchError):
        commutator_norm(A, C)
    with pytest.raises(ValueError):
        commutator_norm(A, B, buffer=3)


def test_csv_export(tmp_path):
    basis = enumerate_basis(1, 1)
    M = ToeplitzMatrix(np.eye(2, dtype=complex), basis, n=1, lam=0.0, degree=1, symbol_name="one")
    path = M.to_csv(tmp_path / "m.csv")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# basis: (0) (1)"
    assert len(lines) == 3
    assert M.to_dict()["dim"] == 2


def test_truncate_is_leading_block():
    rule = ball_full_rule(2, 0.0, radial_N=6, angular_N=8)
    s = SymbolSpec(create_action("parabolic", 2), BetaBasis.canonical(2), RatioProfile(), name="ratio")
    full = assemble_toeplitz(s, 0.0, 3, rule)
    low = assemble_toeplitz(s, 0.0, 2, rule)
    cut = full.truncate(2)
    assert cut.same_space(low)
    assert np.allclose(cut.entries, low.entries, atol=1e-14)
    with pytest.raises(ValueError):
        full.truncate(4)


def test_trend_flags_growth_beyond_slack():
    assert CommutatorTrend([4, 6, 8], [1.0, 1.05, 0.5], buffer=2, block=2).decreasing
    assert not CommutatorTrend([4, 6], [1.0, 1.2], buffer=2, block=2).decreasing
    assert CommutatorTrend([4, 6], [0.0, 1e-13], buffer=2, block=2).decreasing
    payload = CommutatorTrend([4, 6], [0.2, 0.1], buffer=2, block=2).to_dict()
    assert payload["decreasing"] is True
    assert payload["norms"] == [0.2, 0.1]
    assert payload["block"] == 2
    assert payload["floor"] == TREND_FLOOR


def test_trend_treats_noise_level_norms_as_converged():
    assert CommutatorTrend([4, 6, 8], [2.5e-9, 3.1e-9, 3.2e-9], buffer=2, block=2).decreasing
    assert not CommutatorTrend([4, 6], [1e-5, 5e-5], buffer=2, block=2).decreasing


def test_elliptic_trend_is_flat_zero():
    g = create_action("elliptic", 2)
    rule = ball_full_rule(2, 0.0, radial_N=8, angular_N=12)
    a = SymbolSpec(g, BetaBasis.canonical(2), RatioProfile(), name="ratio")
    b = SymbolSpec(g, BetaBasis.from_rows([[1.0, 1.0]]), GaussianProfile(), name="gauss")
    trend = commutator_trend(a, b, 0.0, [5, 3, 4, 5], rule, buffer=1)
    assert trend.degrees == [3, 4, 5]
    assert trend.final < 1e-12
    assert trend.decreasing


TRANSPORTED = [("parabolic", 2, None), ("hyperbolic", 2, None), ("nilpotent", 2, None), ("quasinilpotent", 3, 1)]


@pytest.mark.parametrize("kind, n, k", TRANSPORTED)
def test_transported_pair_trend_decreases_below_tolerance(kind, n, k):
    g = create_action(kind, n, k)
    rule = ball_full_rule(n, 0.0)
    beta = BetaBasis.canonical(n)
    a = SymbolSpec(g, beta, RatioProfile(), name="ratio")
    b = SymbolSpec(g, beta, GaussianProfile(), name="gauss")
    trend = commutator_trend(a, b, 0.0, [4, 6, 8], rule, buffer=2)
    assert trend.block == 2
    assert len(trend.norms) == 3
    assert trend.decreasing, trend.norms
    assert trend.final < 1e-3


def test_trend_block_is_fixed_by_the_smallest_degree():
    g = create_action("nilpotent", 2)
    rule = ball_full_rule(2, 0.0, radial_N=8, angular_N=10)
    a = SymbolSpec(g, BetaBasis.from_rows([[0.0, 1.0]]), RatioProfile(), name="ratio")
    b = SymbolSpec(g, BetaBasis.canonical(2), GaussianProfile(), name="gauss")
    trend = commutator_trend(a, b, 0.0, [2, 3, 4], rule, buffer=1)
    A = assemble_toeplitz(a, 0.0, 4, rule)
    B = assemble_toeplitz(b, 0.0, 4, rule)
    assert trend.block == 1
    assert trend.norms[-1] == pytest.approx(commutator_norm(A, B, block=1), rel=1e-12)
    assert trend.norms[-1] != pytest.approx(commutator_norm(A, B, buffer=1), rel=1e-6)


def test_trend_input_checks():
    rule = ball_full_rule(1, 0.0, radial_N=4, angular_N=4)
    with pytest.raises(ValueError):
        commutator_trend(_re_z1, _im_z1, 0.0, [], rule)
    with pytest.raises(ValueError):
        commutator_trend(_re_z1, _im_z1, 0.0, [1, 2], rule, buffer=2)
