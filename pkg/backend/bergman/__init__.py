"""
Moment maps, β-symbols and Toeplitz operators on weighted Bergman spaces.

Covers the unit ball and the Siegel domain, the five maximal Abelian
actions on them, their moment maps and β-symbols, truncated Toeplitz
matrices and the spectral multiplier functions γ.

Usage:
    from backend.bergman import create_action, BetaBasis, moment_masg

    g = create_action("elliptic", 2)
    mu = moment_masg(g, np.array([0.5, 0.0]))

    rule = ball_full_rule(2, 0.0, radial_N=20, angular_N=24)
    M = assemble_toeplitz(SymbolSpec(g, BetaBasis.canonical(2), create_profile("ratio")), 0.0, 8, rule)
"""

__version__ = "0.1.0"

# Value types and errors
from .models import (
    BasisError,
    BetaBasis,
    CheckResult,
    DimensionMismatchError,
    DomainError,
    DomainKind,
    DomainMismatchError,
    DomainSpec,
    FiberWitness,
    MetadataMismatchError,
    MultiIndex,
    NotInSameFiber,
    Partition,
    PartitionError,
    Point,
    QuadratureError,
    SymbolSpec,
    VerificationReport,
    WitnessNotFound,
)

# Domains
from .domains import (
    bergman_kernel,
    cayley_to_ball,
    cayley_to_siegel,
    contains,
    normalization_constant,
    sample_points,
    u_lambda_apply,
    weight_density,
)

# Group actions
from .group_actions import (
    ActionKind,
    GroupAction,
    act,
    create_action,
    exp_group,
    fundamental_field,
    fundamental_field_fd,
    orbit_transport,
)

# Symplectic geometry
from .symplectic import (
    ScalarField,
    hamiltonian_field,
    inverse_metric,
    kahler_pair,
    metric_from_kernel,
    metric_matrix,
    verify_moment_property,
)

# Moment maps and β-symbols
from .moment import (
    basis_change_matrix,
    coordinate_functions,
    eval_symbol,
    fiber_witness,
    moment_component,
    moment_masg,
    moment_subgroup,
    partition_beta_elliptic,
    partition_beta_parabolic,
    partition_beta_quasinilpotent,
    project_orthogonal,
    project_span,
)

# Profiles
from .profiles import Profile, available_profiles, create_profile

# Quadrature
from .quadrature import QuadratureRule, ball_full_rule, siegel_full_rule

# Toeplitz operators
from .toeplitz import (
    CommutatorTrend,
    ToeplitzMatrix,
    assemble_toeplitz,
    commutator_norm,
    commutator_trend,
    enumerate_basis,
    monomial_norm_sq,
)

# Spectra
from .spectra import (
    SpectrumFamily,
    SpectrumQuery,
    SpectrumTable,
    diagonal_vs_gamma,
    evaluate,
    evaluate_grid,
    gamma_elliptic_Abeta,
    gamma_elliptic_beta,
    gamma_elliptic_moment,
    gamma_elliptic_moment_radial,
    gamma_nilpotent_Abeta,
    gamma_nilpotent_beta,
    gamma_nilpotent_moment,
    gamma_parabolic_Abeta,
    gamma_parabolic_beta,
    gamma_parabolic_moment,
    gamma_quasinilpotent_Abeta,
    gamma_quasinilpotent_beta,
    gamma_quasinilpotent_moment,
    gamma_siegel_moment_direct,
    hyperbolic_coordinates,
    hyperbolic_identity_residuals,
)

# Configuration and commands
from .config import QuadratureConfig, RunConfig
from .commands import CommandResult, cmd_moment, cmd_spectrum, cmd_toeplitz, cmd_verify
from .verify import print_verification_report, run_battery

__all__ = [
    "__version__",
    # Value types and errors
    "BasisError",
    "BetaBasis",
    "CheckResult",
    "DimensionMismatchError",
    "DomainError",
    "DomainKind",
    "DomainMismatchError",
    "DomainSpec",
    "FiberWitness",
    "MetadataMismatchError",
    "MultiIndex",
    "NotInSameFiber",
    "Partition",
    "PartitionError",
    "Point",
    "QuadratureError",
    "SymbolSpec",
    "VerificationReport",
    "WitnessNotFound",
    # Domains
    "bergman_kernel",
    "cayley_to_ball",
    "cayley_to_siegel",
    "contains",
    "normalization_constant",
    "sample_points",
    "u_lambda_apply",
    "weight_density",
    # Group actions
    "ActionKind",
    "GroupAction",
    "act",
    "create_action",
    "exp_group",
    "fundamental_field",
    "fundamental_field_fd",
    "orbit_transport",
    # Symplectic geometry
    "ScalarField",
    "hamiltonian_field",
    "inverse_metric",
    "kahler_pair",
    "metric_from_kernel",
    "metric_matrix",
    "verify_moment_property",
    # Moment maps and β-symbols
    "basis_change_matrix",
    "coordinate_functions",
    "eval_symbol",
    "fiber_witness",
    "moment_component",
    "moment_masg",
    "moment_subgroup",
    "partition_beta_elliptic",
    "partition_beta_parabolic",
    "partition_beta_quasinilpotent",
    "project_orthogonal",
    "project_span",
    # Profiles
    "Profile",
    "available_profiles",
    "create_profile",
    # Quadrature
    "QuadratureRule",
    "ball_full_rule",
    "siegel_full_rule",
    # Toeplitz operators
    "CommutatorTrend",
    "ToeplitzMatrix",
    "assemble_toeplitz",
    "commutator_norm",
    "commutator_trend",
    "enumerate_basis",
    "monomial_norm_sq",
    # Spectra
    "SpectrumFamily",
    "SpectrumQuery",
    "SpectrumTable",
    "diagonal_vs_gamma",
    "evaluate",
    "evaluate_grid",
    "gamma_elliptic_Abeta",
    "gamma_elliptic_beta",
    "gamma_elliptic_moment",
    "gamma_elliptic_moment_radial",
    "gamma_nilpotent_Abeta",
    "gamma_nilpotent_beta",
    "gamma_nilpotent_moment",
    "gamma_parabolic_Abeta",
    "gamma_parabolic_beta",
    "gamma_parabolic_moment",
    "gamma_quasinilpotent_Abeta",
    "gamma_quasinilpotent_beta",
    "gamma_quasinilpotent_moment",
    "gamma_siegel_moment_direct",
    "hyperbolic_coordinates",
    "hyperbolic_identity_residuals",
    # Configuration and commands
    "QuadratureConfig",
    "RunConfig",
    "CommandResult",
    "cmd_moment",
    "cmd_spectrum",
    "cmd_toeplitz",
    "cmd_verify",
    "print_verification_report",
    "run_battery",
]
