import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from backend.bergman.group_actions import create_action  # noqa: E402
from backend.bergman.models import BetaBasis, SymbolSpec  # noqa: E402
from backend.bergman.profiles import (  # noqa: E402
    ConstProfile,
    GaussianProfile,
    ReciprocalProfile,
    SigmoidProfile,
    create_profile,
)
from backend.bergman.quadrature import ball_full_rule  # noqa: E402
from backend.bergman.spectra import (  # noqa: E402
    closed_form_defining_gamma,
    diagonal_vs_gamma,
    gamma_elliptic_Abeta,
    gamma_elliptic_beta,
    gamma_elliptic_moment,
    gamma_elliptic_moment_radial,
    gamma_elliptic_monte_carlo,
)
from backend.bergman.toeplitz import enumerate_basis  # noqa: E402

RADIAL = BetaBasis.from_rows([[1.0]])


@pytest.mark.parametrize("p,expected", [((0,), 0.5), ((3,), 0.2)])
def test_defining_function_multiplier(p, expected):
    assert gamma_elliptic_beta(ReciprocalProfile(), RADIAL, 0.0, p) == pytest.approx(expected, abs=1e-12)
    assert closed_form_defining_gamma(1, 0.0, p) == pytest.approx(expected)


def test_moment_form_known_value():
    assert gamma_elliptic_moment(ReciprocalProfile(), 0.0, (0,)) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("n,lam", [(1, 0.0), (2, 0.5), (3, 2.0)])
def test_constant_profile_gives_one(n, lam):
    beta = BetaBasis.canonical(n)
    for p in enumerate_basis(n, 3):
        assert gamma_elliptic_beta(ConstProfile(), beta, lam, p, N=10) == pytest.approx(1.0, abs=1e-12)
        assert gamma_elliptic_moment(ConstProfile(), lam, p.p, N=10) == pytest.approx(1.0, abs=1e-12)
        assert gamma_elliptic_Abeta(ConstProfile(), beta, lam, p.p, N=10) == pytest.approx(1.0, abs=1e-12)


def test_representations_agree_for_bounded_profile():
    beta = BetaBasis.from_rows([[1.0, 0.5]])
    f = create_profile("gaussian", weights=[0.7])
    for p in enumerate_basis(2, 4):
        b = gamma_elliptic_beta(f, beta, 0.5, p)
        a = gamma_elliptic_Abeta(f, beta, 0.5, p.p)
        assert abs(a - b) < 1e-8


def test_canonical_abeta_reduces_to_moment_form():
    f = GaussianProfile()
    for p in enumerate_basis(2, 2):
        a = gamma_elliptic_Abeta(f, BetaBasis.canonical(2), 1.0, p.p)
        m = gamma_elliptic_moment(f, 1.0, p.p)
        assert a == pytest.approx(m, abs=1e-14)


def test_multiplier_stays_in_profile_range():
    f = SigmoidProfile(center=0.5, steepness=6.0)
    for p in enumerate_basis(2, 4):
        value = gamma_elliptic_beta(f, BetaBasis.canonical(2), 0.0, p)
        assert -1e-12 <= value <= 1.0 + 1e-12


def test_monte_carlo_agrees_with_quadrature():
    estimate = gamma_elliptic_monte_carlo(ReciprocalProfile(), 0.0, (1, 0), samples=20000, seed=3)
    exact = gamma_elliptic_moment(ReciprocalProfile(), 0.0, (1, 0))
    assert estimate.within(exact)


def test_powers_must_match_dimension():
    with pytest.raises(ValueError):
        gamma_elliptic_beta(ConstProfile(), BetaBasis.canonical(2), 0.0, (1,))


class TestToeplitzDiagonal:
    rule = ball_full_rule(2, 0.0, radial_N=12, angular_N=12)

    def test_defining_function_symbol(self):
        g = create_action("elliptic", 2)
        s = SymbolSpec(g, BetaBasis.from_rows([[1.0, 1.0]]), ReciprocalProfile(), name="1-|z|^2")
        assert diagonal_vs_gamma(s, 0.0, 5, self.rule) < 1e-10

    def test_constant_symbol(self):
        g = create_action("elliptic", 2)
        s = SymbolSpec(g, BetaBasis.canonical(2), ConstProfile(), name="one")
        assert diagonal_vs_gamma(s, 0.0, 5, self.rule) < 1e-12

    def test_bounded_profile(self):
        g = create_action("elliptic", 2)
        s = SymbolSpec(g, BetaBasis.from_rows([[1.0, 0.0], [0.0, 2.0]]),
                       create_profile("sigmoid", weights=[1.0, -1.0], params=[0.2, 3.0]), name="sigmoid")
        assert diagonal_vs_gamma(s, 0.0, 5, self.rule) < 1e-8

    def test_rejects_siegel_symbols(self):
        g = create_action("parabolic", 2)
        s = SymbolSpec(g, BetaBasis.canonical(2), ConstProfile())
        with pytest.raises(ValueError):
            diagonal_vs_gamma(s, 0.0, 2, self.rule)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_radial_rule_integrates_constant_to_one(n):
    for p in enumerate_basis(n, 3):
        assert gamma_elliptic_moment_radial(ConstProfile(), 0.5, p.p, N=12) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("lam", [0.0, 1.0])
@pytest.mark.parametrize(
    "rows, weights",
    [
        ([[1.0]], [0.7]),
        ([[1.0, 0.5]], [0.7]),
        ([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]], [0.5, 1.0]),
    ],
)
def test_radial_rule_matches_beta_form(lam, rows, weights):
    # the radial rule shares no node with the simplex rule behind the β-form
    beta = BetaBasis.from_rows(rows)
    f = create_profile("gaussian", weights=weights)
    for p in enumerate_basis(beta.n, 3):
        radial = gamma_elliptic_moment_radial(f, lam, p.p, beta=beta)
        assert radial == pytest.approx(gamma_elliptic_beta(f, beta, lam, p), abs=1e-6)


@pytest.mark.parametrize("lam", [0.0, 1.0])
@pytest.mark.parametrize("name", ["reciprocal", "gaussian"])
def test_radial_rule_matches_orthant_moment_form(lam, name):
    f = create_profile(name, weights=[1.0, 2.0])
    for p in enumerate_basis(2, 3):
        radial = gamma_elliptic_moment_radial(f, lam, p.p)
        assert radial == pytest.approx(gamma_elliptic_moment(f, lam, p.p), abs=1e-6)


def test_radial_rule_reproduces_defining_function_multiplier():
    beta = BetaBasis.from_rows([[1.0, 1.0]])
    for p in enumerate_basis(2, 4):
        value = gamma_elliptic_moment_radial(ReciprocalProfile(), 1.0, p.p, beta=beta)
        assert value == pytest.approx(closed_form_defining_gamma(2, 1.0, p.p), abs=1e-10)
