"""
Spectral multiplier functions γ for the Abelian families, their grids and
the quasi-hyperbolic coordinate identities.
"""

from .elliptic import (
    closed_form_defining_gamma,
    diagonal_vs_gamma,
    gamma_elliptic_Abeta,
    gamma_elliptic_beta,
    gamma_elliptic_moment,
    gamma_elliptic_moment_radial,
    gamma_elliptic_monte_carlo,
)
from .siegel import (
    SiegelSpectralEngine,
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
)
from .hyperbolic import HyperbolicResiduals, hyperbolic_coordinates, hyperbolic_identity_residuals
from .grid import (
    STANDARD_P_MAX,
    STANDARD_XI,
    STANDARD_Y,
    Representation,
    SpectrumFamily,
    SpectrumQuery,
    SpectrumRow,
    SpectrumTable,
    cross_partner,
    evaluate,
    evaluate_grid,
    standard_queries,
)

__all__ = [
    "closed_form_defining_gamma",
    "diagonal_vs_gamma",
    "gamma_elliptic_Abeta",
    "gamma_elliptic_beta",
    "gamma_elliptic_moment",
    "gamma_elliptic_moment_radial",
    "gamma_elliptic_monte_carlo",
    "SiegelSpectralEngine",
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
    "HyperbolicResiduals",
    "hyperbolic_coordinates",
    "hyperbolic_identity_residuals",
    "STANDARD_P_MAX",
    "STANDARD_XI",
    "STANDARD_Y",
    "Representation",
    "SpectrumFamily",
    "SpectrumQuery",
    "SpectrumRow",
    "SpectrumTable",
    "cross_partner",
    "evaluate",
    "evaluate_grid",
    "standard_queries",
]
