"""
Invariant battery.

Runs the moment-map, fiber, projection and spectral checks at desk scale
and collects one CheckResult per (check, action) into a
VerificationReport. Independent-rule oracles, fiber witnesses, the U_λ
isometry and the commutator checks follow the per-family ones. The
`moment-sign` fault flips μ^{E(n)} inside the harness so the battery can
be shown to fail.
"""

import logging
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .config import FAULTS, QuadratureConfig
from .domains import sample_points, u_lambda_apply
from .group_actions import ActionKind, GroupAction, create_action, orbit_transport
from .models import (
    BetaBasis,
    CheckResult,
    DomainKind,
    FiberWitness,
    MultiIndex,
    NotInSameFiber,
    SymbolSpec,
    VerificationReport,
)
from .moment import fiber_witness, moment_component, project_orthogonal
from .profiles import ConstProfile, GaussianProfile, RatioProfile, ReciprocalProfile
from .quadrature.ball import ball_full_rule
from .quadrature.siegel import siegel_full_rule
from .spectra import (
    Representation,
    SpectrumFamily,
    SpectrumQuery,
    closed_form_defining_gamma,
    diagonal_vs_gamma,
    evaluate,
    gamma_elliptic_beta,
    gamma_elliptic_moment_radial,
    gamma_nilpotent_beta,
    gamma_parabolic_beta,
    gamma_quasinilpotent_beta,
    gamma_siegel_moment_direct,
    hyperbolic_identity_residuals,
)
from .symplectic import verify_moment_property
from .toeplitz import assemble_toeplitz, commutator_norm, commutator_trend, enumerate_basis, monomial_norm_sq

logger = logging.getLogger(__name__)

MOMENT_PROPERTY_TOL = 1e-6
INVARIANCE_TOL = 1e-10
TRANSPORT_TOL = 1e-8
NESTING_TOL = 1e-12
NORMALIZATION_TOL = 1e-10
CROSS_TOL = 1e-6
DIAGONAL_TOL = 1e-8
CLOSED_FORM_TOL = 1e-10
HYPERBOLIC_TOL = 1e-12
WITNESS_TOL = 1e-10
ISOMETRY_TOL = 1e-6
COMMUTATOR_TOL = 1e-10
TREND_TOL = 1e-3

TREND_DEGREES = (4, 6, 8)
# (radial, angular) per n for the transported trend
TREND_ORDERS = {2: (24, 40), 3: (10, 20)}
INDEPENDENT_RADIAL = 40
INDEPENDENT_LAGUERRE = 48
INDEPENDENT_HERMITE = 24


def roster(n: int) -> List[GroupAction]:
    """One action per family, each in the smallest dimension >= n it supports."""
    return [
        create_action(ActionKind.QUASI_ELLIPTIC, n),
        create_action(ActionKind.QUASI_PARABOLIC, max(n, 2)),
        create_action(ActionKind.QUASI_HYPERBOLIC, max(n, 2)),
        create_action(ActionKind.NILPOTENT, max(n, 2)),
        create_action(ActionKind.QUASI_NILPOTENT, max(n, 3), 1),
    ]


def _check(name: str, residual: float, threshold: float, samples: int, detail: str = "") -> CheckResult:
    passed = bool(np.isfinite(residual) and residual < threshold)
    log = logger.info if passed else logger.warning
    log("check %s: residual %.3e (threshold %.0e) %s", name, residual, threshold, "passed" if passed else "FAILED")
    return CheckResult(name=name, passed=passed, residual=float(residual), threshold=threshold,
                       detail=detail, samples=samples)


def check_moment_property(g: GroupAction, rng: np.random.Generator, samples: int, fault: Optional[str]) -> CheckResult:
    points = sample_points(g.domain_kind, g.n, samples, rng)
    worst = 0.0
    flip = fault == "moment-sign" and g.kind is ActionKind.QUASI_ELLIPTIC
    for z in points:
        X = rng.normal(size=g.n)
        field = moment_component(g, X).negated() if flip else None
        worst = max(worst, verify_moment_property(g, X, z, analytic=True, field=field))
    detail = "fault injected: μ sign flipped" if flip else ""
    return _check(f"moment_property[{g.label}]", worst, MOMENT_PROPERTY_TOL, samples, detail)


def check_invariance(g: GroupAction, rng: np.random.Generator, samples: int) -> CheckResult:
    z = sample_points(g.domain_kind, g.n, samples, rng)
    moved = g.act_coords(g.random_param(rng, samples), z)
    residual = float(np.max(np.abs(g.moment_coords(moved) - g.moment_coords(z))))
    return _check(f"invariance[{g.label}]", residual, INVARIANCE_TOL, samples)


def check_fiber_transport(g: GroupAction, rng: np.random.Generator, samples: int) -> CheckResult:
    """Same-fiber pairs from the section, then transported back."""
    worst = 0.0
    for z in sample_points(g.domain_kind, g.n, samples, rng):
        w = g.act_coords(g.random_param(rng)[0], g.section(g.moment_coords(z)))
        params = orbit_transport(g, w, z)
        if isinstance(params, NotInSameFiber):
            return _check(f"fiber_transport[{g.label}]", np.inf, TRANSPORT_TOL, samples,
                          f"constructed pair not in the same fiber (mismatch {params.mismatch:.3e})")
        worst = max(worst, float(np.linalg.norm(g.act_coords(params, w) - z)))
    return _check(f"fiber_transport[{g.label}]", worst, TRANSPORT_TOL, samples)


def check_projection_nesting(g: GroupAction, rng: np.random.Generator, samples: int) -> CheckResult:
    """β₁ = {e_1} ⊂ β₂ = {e_1, e_n}: proj_1 = proj_1 ∘ proj_2 on μ^G."""
    n = g.n
    e = np.eye(n)
    inner = BetaBasis.from_rows([e[0]])
    outer = BetaBasis.from_rows([e[0], e[-1]]) if n > 1 else inner
    mu = g.moment_coords(sample_points(g.domain_kind, n, samples, rng))
    residual = float(np.max(np.abs(project_orthogonal(inner, mu) - project_orthogonal(inner, project_orthogonal(outer, mu)))))
    return _check(f"projection_nesting[{g.label}]", residual, NESTING_TOL, samples)


def _spectral_queries(n: int, lam: float) -> List[SpectrumQuery]:
    m = max(n, 3)
    return [
        SpectrumQuery(SpectrumFamily.ELLIPTIC, n, lam, p=MultiIndex((1,) + (0,) * (n - 1))),
        SpectrumQuery(SpectrumFamily.PARABOLIC, 2, lam, p=MultiIndex((2,)), xi=0.5),
        SpectrumQuery(SpectrumFamily.NILPOTENT, 2, lam, xi=2.0, yprime=(1.0,)),
        SpectrumQuery(SpectrumFamily.QUASI_NILPOTENT, m, lam, k=1, p=MultiIndex((1,)), xi=1.0,
                      yprime=(-1.0,) * (m - 2)),
    ]


def check_normalization(lam: float, n: int, quad: QuadratureConfig) -> CheckResult:
    const = ConstProfile()
    worst = 0.0
    queries = _spectral_queries(n, lam)
    for q in queries:
        for rep in Representation:
            value = evaluate(q, const, None, rep, quad.spectral_radial, quad.laguerre_n, quad.hermite_n)
            worst = max(worst, abs(value - 1.0))
    return _check("spectral_normalization", worst, NORMALIZATION_TOL, len(queries) * len(Representation))


def check_cross_representation(lam: float, n: int, quad: QuadratureConfig) -> CheckResult:
    """β-form against A(β)-form, and moment against the canonical β-form."""
    worst = 0.0
    queries = _spectral_queries(n, lam)
    for q in queries:
        profile = ReciprocalProfile()
        beta = BetaBasis.from_rows([np.ones(q.n)])
        orders = (quad.spectral_radial, quad.laguerre_n, quad.hermite_n)
        b = evaluate(q, profile, beta, Representation.BETA, *orders)
        a = evaluate(q, profile, beta, Representation.ABETA, *orders)
        ratio = RatioProfile()
        m = evaluate(q, ratio, None, Representation.MOMENT, *orders)
        c = evaluate(q, ratio, None, Representation.BETA, *orders)
        worst = max(worst, abs(b - a), abs(m - c))
    return _check("cross_representation", worst, CROSS_TOL, 2 * len(queries))


def check_elliptic_diagonal(lam: float, n: int, degree: int = 6) -> List[CheckResult]:
    """Toeplitz diagonal of a = 1 - |z|^2 on B^n against γ and its closed form."""
    n = min(n, 2)
    g = create_action(ActionKind.QUASI_ELLIPTIC, n)
    symbol = SymbolSpec(g, BetaBasis.from_rows([np.ones(n)]), ReciprocalProfile(), name="1-|z|^2")
    rule = ball_full_rule(n, lam, radial_N=20, angular_N=2 * degree + 4)
    residual = diagonal_vs_gamma(symbol, lam, degree, rule)

    matrix = assemble_toeplitz(symbol, lam, degree, rule)
    closed = np.array([closed_form_defining_gamma(n, lam, b.p) for b in matrix.basis])
    closed_residual = float(np.max(np.abs(matrix.diagonal() - closed)))
    return [
        _check(f"elliptic_diagonal[n={n}]", residual, DIAGONAL_TOL, matrix.dim),
        _check(f"elliptic_closed_form[n={n}]", closed_residual, CLOSED_FORM_TOL, matrix.dim),
    ]


def check_independent_rules(lam: float) -> CheckResult:
    """
    Moment forms on rules built in u itself against the β-forms, whose
    nodes they do not share: a wrong pushforward or Jacobian shows up here.
    """
    worst = 0.0
    cases = 0
    beta = BetaBasis.from_rows([[1.0, 0.5]])
    f = GaussianProfile([0.7])
    for p in [(0, 0), (1, 2), (3, 0)]:
        radial = gamma_elliptic_moment_radial(f, lam, p, N=INDEPENDENT_RADIAL, beta=beta)
        worst = max(worst, abs(radial - gamma_elliptic_beta(f, beta, lam, p, INDEPENDENT_RADIAL)))
        cases += 1

    orders = dict(laguerre_n=INDEPENDENT_LAGUERRE, hermite_n=INDEPENDENT_HERMITE)
    u_profile = GaussianProfile([0.5, 1.0])
    for p in [(0,), (2,)]:
        direct = gamma_siegel_moment_direct(u_profile, lam, p, (), 0.5, **orders)
        worst = max(worst, abs(direct - gamma_parabolic_beta(u_profile, BetaBasis.canonical(2), lam, p, 0.5,
                                                              laguerre_n=INDEPENDENT_LAGUERRE)))
        cases += 1
    for y in [-1.0, 0.7]:
        direct = gamma_siegel_moment_direct(u_profile, lam, (), (y,), 2.0, **orders)
        worst = max(worst, abs(direct - gamma_nilpotent_beta(u_profile, BetaBasis.canonical(2), lam, (y,), 2.0,
                                                              **orders)))
        cases += 1
    mixed = BetaBasis.from_rows([[1.0, 0.0, 0.0], [0.0, 1.0, 1.0]])
    direct = gamma_siegel_moment_direct(u_profile, lam, (2,), (0.8,), 0.5, beta=mixed, **orders)
    worst = max(worst, abs(direct - gamma_quasinilpotent_beta(u_profile, mixed, lam, (2,), (0.8,), 0.5, **orders)))
    return _check("independent_rules", worst, CROSS_TOL, cases + 1)


def check_fiber_witnesses(trials: int = 200) -> List[CheckResult]:
    """
    A partial β leaves the H-fibers too coarse to fix |z_2|: on B^2 with
    β = {e_1}, and on D_3 with β = {e_1, e_3} against |z_2|^2/ρ.
    """
    configs = [
        (create_action(ActionKind.QUASI_ELLIPTIC, 2), [[1.0, 0.0]], lambda z: abs(z.coords[1]), 0),
        (create_action(ActionKind.QUASI_PARABOLIC, 3), [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]],
         lambda z: abs(z.coords[1]) ** 2 / z.rho, 1),
    ]
    results = []
    for g, rows, discriminator, seed in configs:
        name = f"fiber_witness[{g.label}]"
        found = fiber_witness(g, BetaBasis.from_rows(rows), discriminator, trials=trials, seed=seed)
        if not isinstance(found, FiberWitness):
            results.append(_check(name, np.inf, WITNESS_TOL, trials, f"no witness (best gap {found.best_gap:.3e})"))
            continue
        results.append(_check(name, found.moment_gap, WITNESS_TOL, found.attempts,
                              f"discriminator gap {found.discriminator_gap:.3f}"))
    return results


def check_u_lambda_isometry(lam: float, degree: int = 4) -> List[CheckResult]:
    """‖U_λ z^p‖ on D_n against ‖z^p‖ on B^n, relative, for n = 1, 2."""
    results = []
    for n in (1, 2):
        rule = siegel_full_rule(n, lam, radial_N=10, angular_N=12)
        basis = enumerate_basis(n, degree)
        worst = 0.0
        for p in basis:
            exponents = np.array(p.p)

            def density(w, exponents=exponents):
                return np.abs(u_lambda_apply(lam, lambda b: np.prod(b ** exponents, axis=-1), w)) ** 2

            expected = monomial_norm_sq(n, lam, p)
            worst = max(worst, abs(complex(rule.integrate_dv_hat(density)) - expected) / expected)
        results.append(_check(f"u_lambda_isometry[n={n}]", worst, ISOMETRY_TOL, len(basis)))
    return results


def check_elliptic_commutativity(lam: float, n: int, degree: int = 8) -> CheckResult:
    """Two β-quasi-elliptic symbols: diagonal matrices with vanishing commutator."""
    n = min(n, 2)
    g = create_action(ActionKind.QUASI_ELLIPTIC, n)
    a = SymbolSpec(g, BetaBasis.from_rows([np.arange(1.0, n + 1)]), RatioProfile(), name="ratio")
    b = SymbolSpec(g, BetaBasis.canonical(n), GaussianProfile(), name="gauss")
    rule = ball_full_rule(n, lam, radial_N=20, angular_N=2 * degree + 2)
    A = assemble_toeplitz(a, lam, degree, rule)
    B = assemble_toeplitz(b, lam, degree, rule)
    residual = max(commutator_norm(A, B, buffer=0), A.off_diagonal_max(), B.off_diagonal_max())
    return _check(f"elliptic_commutativity[n={n}]", residual, COMMUTATOR_TOL, A.dim)


def transported_pairs() -> List[Tuple[SymbolSpec, SymbolSpec]]:
    """ratio∘I and gaussian∘I for P(2), H(2), N(2) and N(3,1)."""
    actions = [
        create_action(ActionKind.QUASI_PARABOLIC, 2),
        create_action(ActionKind.QUASI_HYPERBOLIC, 2),
        create_action(ActionKind.NILPOTENT, 2),
        create_action(ActionKind.QUASI_NILPOTENT, 3, 1),
    ]
    pairs = []
    for g in actions:
        beta = BetaBasis.canonical(g.n)
        pairs.append((SymbolSpec(g, beta, RatioProfile(), name=f"ratio[{g.label}]"),
                      SymbolSpec(g, beta, GaussianProfile(), name=f"gauss[{g.label}]")))
    return pairs


def check_transported_trend(lam: float, degrees: Sequence[int] = TREND_DEGREES) -> List[CheckResult]:
    """Fixed-block commutator norms of each transported pair must fall and end below TREND_TOL."""
    results = []
    rules = {}
    for a, b in transported_pairs():
        n = a.action.n
        if n not in rules:
            radial_n, angular_n = TREND_ORDERS[n]
            rules[n] = ball_full_rule(n, lam, radial_N=radial_n, angular_N=angular_n)
        trend = commutator_trend(a, b, lam, degrees, rules[n])
        residual = trend.final if trend.decreasing else np.inf
        detail = f"|p| <= {trend.block}: " + ", ".join(f"{v:.2e}" for v in trend.norms)
        results.append(_check(f"transported_trend[{a.action.label}]", residual, TREND_TOL, len(trend.degrees), detail))
    return results


def check_hyperbolic_identities(rng: np.random.Generator, n: int, samples: int) -> CheckResult:
    points = sample_points(DomainKind.SIEGEL, max(n, 2), samples, rng)
    res = hyperbolic_identity_residuals(points)
    return _check("hyperbolic_identities", res.max_residual, HYPERBOLIC_TOL, samples)


def run_battery(
    n: int = 2,
    lam: float = 0.0,
    seed: int = 0,
    fault: Optional[str] = None,
    quad: Optional[QuadratureConfig] = None,
    samples: int = 50,
    progress: Optional[Callable[[CheckResult], None]] = None,
    trend_degrees: Sequence[int] = TREND_DEGREES,
) -> VerificationReport:
    """
    Run every check and collect the results.

    Args:
        n: Base dimension (actions that need more use the smallest allowed)
        lam: Weight λ
        seed: Seed of the numpy Generator shared by all checks
        fault: None or one of FAULTS
        quad: Quadrature orders for the spectral checks
        samples: Random points per geometric check
        progress: Called with each CheckResult as it completes
        trend_degrees: Degrees of the transported commutator trend; empty skips it
    """
    if fault is not None and fault not in FAULTS:
        supported = ", ".join(f"'{f}'" for f in FAULTS)
        raise ValueError(f"Unknown fault: '{fault}'. Supported: {supported}")
    quad = quad or QuadratureConfig()
    rng = np.random.default_rng(seed)
    report = VerificationReport(fault=fault)

    def add(result: CheckResult) -> None:
        report.checks.append(result)
        if progress is not None:
            progress(result)

    for g in roster(n):
        add(check_moment_property(g, rng, samples, fault))
        add(check_invariance(g, rng, 20 * samples))
        add(check_fiber_transport(g, rng, samples))
        add(check_projection_nesting(g, rng, 20 * samples))
    add(check_normalization(lam, n, quad))
    add(check_cross_representation(lam, n, quad))
    for result in check_elliptic_diagonal(lam, n):
        add(result)
    add(check_hyperbolic_identities(rng, n, 20 * samples))
    add(check_independent_rules(lam))
    for result in check_fiber_witnesses():
        add(result)
    for result in check_u_lambda_isometry(lam):
        add(result)
    add(check_elliptic_commutativity(lam, n))
    if trend_degrees:
        for result in check_transported_trend(lam, trend_degrees):
            add(result)
    logger.info("verification: %d checks, %d failed", len(report.checks), len(report.failures))
    return report


def print_verification_report(report: VerificationReport) -> None:
    """Pretty-print a verification report."""
    print(f"\n{'='*60}")
    print("INVARIANT VERIFICATION REPORT")
    print(f"{'='*60}")
    if report.fault:
        print(f"Fault injected: {report.fault}")
    print(f"Checks run: {len(report.checks)}")
    print(f"{'='*60}")
    for c in report.checks:
        tag = "[OK]" if c.passed else "[FAIL]"
        line = f"{tag} {c.name}: {c.residual:.3e} < {c.threshold:.0e}"
        if c.detail:
            line += f"  ({c.detail})"
        print(line)
    print(f"{'='*60}")
    if report.passed:
        print("[OK] All checks passed.")
    else:
        print(f"[ERROR] {len(report.failures)} check(s) failed.")
    print(f"{'='*60}\n")
