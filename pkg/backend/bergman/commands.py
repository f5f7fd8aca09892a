"""
Command operations behind the CLI.

Each cmd_* takes a validated RunConfig, writes its outputs under
config.out and returns a CommandResult carrying the JSON report and the
exit code (0 pass, 1 check failure).
"""

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from .config import RunConfig
from .domains import sample_points
from .group_actions import ActionKind, GroupAction, create_action
from .models import Point, SymbolSpec
from .moment import coordinate_functions, moment_masg, moment_subgroup, project_span
from .profiles import create_profile
from .quadrature.ball import ball_full_rule
from .reports import build_report, write_json
from .spectra import Representation, diagonal_vs_gamma, evaluate_grid, standard_queries
from .toeplitz import ToeplitzMatrix, assemble_toeplitz, commutator_norm, commutator_trend
from .verify import run_battery

logger = logging.getLogger(__name__)

DEFAULT_POINT_COUNT = 5


@dataclass
class CommandResult:
    """Report, exit code and written files of one command run."""
    report: Dict[str, Any]
    exit_code: int = 0
    outputs: List[Path] = field(default_factory=list)
    detail: Any = None


def parse_point(text: str) -> np.ndarray:
    """'0.5,0.1+0.2j' -> complex coordinate vector."""
    try:
        return np.array([complex(tok.strip().replace(" ", "")) for tok in text.split(",") if tok.strip()])
    except ValueError as exc:
        raise ValueError(f"Cannot parse point '{text}': {exc}") from exc


def _out_dir(config: RunConfig) -> Path:
    path = Path(config.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _points(config: RunConfig, g: GroupAction) -> List[Point]:
    domain = g.domain(config.lam)
    if config.points:
        return [Point(parse_point(text), domain) for text in config.points]
    rng = np.random.default_rng(config.seed)
    return [Point(z, domain) for z in sample_points(g.domain_kind, g.n, DEFAULT_POINT_COUNT, rng)]


def cmd_moment(config: RunConfig) -> CommandResult:
    """μ^G, μ^H and the coordinate functions at the configured points."""
    started = time.perf_counter()
    g = config.action_obj()
    beta = config.beta_basis()
    rng = np.random.default_rng(config.seed + 1)
    rows = []
    worst_invariance = 0.0
    for z in _points(config, g):
        mu = moment_masg(g, z)
        mu_h = moment_subgroup(g, beta, z) if beta.is_orthogonal() else project_span(beta, mu)
        row: Dict[str, Any] = {
            "point": z.to_dict(),
            "mu_G": mu,
            "mu_H": mu_h,
            "coordinates": coordinate_functions(g, beta, z),
        }
        if config.check_invariance:
            moved = g.act_coords(g.random_param(rng)[0], z.coords)
            residual = float(np.max(np.abs(g.moment_coords(moved) - mu)))
            row["invariance_residual"] = residual
            worst_invariance = max(worst_invariance, residual)
        rows.append(row)

    result: Dict[str, Any] = {"action": g.label, "beta": beta.to_dict(), "points": rows}
    passed = None
    if config.check_invariance:
        tol = config.tol if config.tol is not None else 1e-10
        passed = worst_invariance < tol
        result["invariance"] = {"max_residual": worst_invariance, "tol": tol}
    report = build_report(config, result, started, passed)
    path = write_json(report, _out_dir(config) / "moment.json")
    return CommandResult(report, 0 if passed in (None, True) else 1, [path])


def _re_z1(z: np.ndarray) -> np.ndarray:
    return z[..., 0].real


def _im_z1(z: np.ndarray) -> np.ndarray:
    return z[..., 0].imag


def _symbol_pair(config: RunConfig, g: GroupAction) -> List[Any]:
    if config.pair == "re-im":
        return [_re_z1, _im_z1]
    beta = config.beta_basis()
    main = SymbolSpec(g, beta, config.profile_obj(beta.m), name=f"{config.profile}∘β")
    companion = SymbolSpec(g, beta, create_profile("gaussian"), name="gaussian∘β")
    return [main, companion]


def cmd_toeplitz(config: RunConfig) -> CommandResult:
    """
    Assemble the configured symbol pair, write both matrices and their
    commutator norm. With trend degrees, also the norm along those degrees;
    the check then asks for a decreasing trend (and final norm < tol).
    """
    started = time.perf_counter()
    g = config.action_obj()
    top = max([config.degree] + config.trend)
    radial_n, angular_n = config.quad.ball_orders(g.n)
    if angular_n <= 2 * top:
        logger.warning(
            "angular order %d does not resolve degree %d exactly (needs > %d)",
            angular_n, top, 2 * top,
        )
    rule = ball_full_rule(
        g.n, config.lam,
        radial_N=radial_n,
        angular_N=angular_n,
        chunk_size=config.quad.chunk_size,
    )
    out = _out_dir(config)
    pair = _symbol_pair(config, g)
    matrices: List[ToeplitzMatrix] = []
    outputs: List[Path] = []
    for index, symbol in enumerate(pair):
        matrix = assemble_toeplitz(symbol, config.lam, config.degree, rule)
        matrices.append(matrix)
        outputs.append(matrix.to_csv(out / f"toeplitz_{index}.csv"))
    norm = commutator_norm(matrices[0], matrices[1], config.buffer)
    result: Dict[str, Any] = {
        "action": g.label,
        "pair": config.pair,
        "matrices": [m.to_dict() for m in matrices],
        "commutator_norm": norm,
        "buffer": config.buffer,
    }
    checks: List[bool] = []
    if config.trend:
        trend = commutator_trend(pair[0], pair[1], config.lam, config.trend, rule, config.buffer)
        result["trend"] = trend.to_dict()
        checks.append(trend.decreasing)
        if config.tol is not None:
            checks.append(trend.final < config.tol)
    elif config.tol is not None:
        checks.append(norm < config.tol)
    passed = all(checks) if checks else None
    report = build_report(config, result, started, passed)
    outputs.append(write_json(report, out / "toeplitz.json"))
    return CommandResult(report, 0 if passed in (None, True) else 1, outputs)


def cmd_spectrum(config: RunConfig) -> CommandResult:
    """
    γ over the configured grid; with cross_check, a residual column
    against the partner representation and, for the elliptic family, the
    Toeplitz diagonal comparison up to degree min(degree, p_max).
    """
    started = time.perf_counter()
    family = config.family
    beta = config.beta_basis(family)
    representation = Representation(config.representation)
    m = config.n if representation is Representation.MOMENT else beta.m
    profile = config.profile_obj(m)
    k = config.k if family == "quasinilpotent" else None
    queries = standard_queries(family, config.n, config.lam, k, config.p_max, config.grid_xi, config.grid_y)
    table = evaluate_grid(
        queries, profile, beta, representation,
        cross_check=config.cross_check,
        radial_n=config.quad.spectral_radial,
        laguerre_n=config.quad.laguerre_n,
        hermite_n=config.quad.hermite_n,
        profile_name=config.profile,
    )
    out = _out_dir(config)
    outputs = [table.to_csv(out / f"spectrum_{family}.csv")]
    result: Dict[str, Any] = {"family": family, "beta": beta.to_dict(), "table": table.to_dict()}

    residuals: List[float] = []
    if config.cross_check:
        residuals.append(table.max_cross_residual() or 0.0)
        if family == "elliptic":
            g = create_action(ActionKind.QUASI_ELLIPTIC, config.n)
            symbol = SymbolSpec(g, beta, config.profile_obj(beta.m), name=f"{config.profile}∘β")
            degree = min(config.degree, config.p_max)
            radial_n, angular_n = config.quad.ball_orders(config.n)
            rule = ball_full_rule(
                config.n, config.lam,
                radial_N=radial_n,
                angular_N=max(angular_n, 2 * degree + 2),
                chunk_size=config.quad.chunk_size,
            )
            diag = diagonal_vs_gamma(symbol, config.lam, degree, rule)
            result["diagonal_vs_gamma"] = {"degree": degree, "max_residual": diag}
            residuals.append(diag)

    passed = None
    if residuals:
        tol = config.tol if config.tol is not None else 1e-6
        passed = max(residuals) < tol
        result["tol"] = tol
    report = build_report(config, result, started, passed)
    outputs.append(write_json(report, out / "spectrum.json"))
    return CommandResult(report, 0 if passed in (None, True) else 1, outputs)


def cmd_verify(config: RunConfig, progress: Optional[Callable] = None) -> CommandResult:
    """Run the invariant battery; exit code 0 iff every check passes."""
    started = time.perf_counter()
    report_obj = run_battery(
        n=config.n,
        lam=config.lam,
        seed=config.seed,
        fault=config.fault,
        quad=config.quad,
        samples=config.samples,
        progress=progress,
        trend_degrees=config.trend,
    )
    report = build_report(config, report_obj.to_dict(), started, report_obj.passed)
    path = write_json(report, _out_dir(config) / "verify.json")
    return CommandResult(report, 0 if report_obj.passed else 1, [path], detail=report_obj)


COMMANDS: Dict[str, Callable[[RunConfig], CommandResult]] = {
    "moment": cmd_moment,
    "toeplitz": cmd_toeplitz,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
}
