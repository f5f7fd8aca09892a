"""
Spectrum queries and tables.

A SpectrumQuery pins one (p, ξ, y') point of a family; evaluate() dispatches
it to the β-form, moment form or A(β)-form, and evaluate_grid() runs a
whole grid with an optional cross-representation residual per row.
"""

import csv
import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from ..models import BetaBasis, MultiIndex
from . import elliptic, siegel

logger = logging.getLogger(__name__)

Profile = Callable[[np.ndarray], np.ndarray]

STANDARD_XI = (0.25, 0.5, 1.0, 2.0, 4.0)
STANDARD_Y = (-2.0, -1.0, 0.0, 1.0, 2.0)
STANDARD_P_MAX = 6


class SpectrumFamily(Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    NILPOTENT = "nilpotent"
    QUASI_NILPOTENT = "quasinilpotent"


class Representation(Enum):
    BETA = "beta"
    MOMENT = "moment"
    ABETA = "abeta"


def _family(value: Union[SpectrumFamily, str]) -> SpectrumFamily:
    if isinstance(value, SpectrumFamily):
        return value
    try:
        return SpectrumFamily(value.lower())
    except ValueError:
        supported = ", ".join(f"'{f.value}'" for f in SpectrumFamily)
        raise ValueError(f"Unknown family: '{value}'. Supported: {supported}") from None


def _representation(value: Union[Representation, str]) -> Representation:
    if isinstance(value, Representation):
        return value
    try:
        return Representation(value.lower())
    except ValueError:
        supported = ", ".join(f"'{r.value}'" for r in Representation)
        raise ValueError(f"Unknown representation: '{value}'. Supported: {supported}") from None


@dataclass(frozen=True)
class SpectrumQuery:
    """
    One evaluation point of a γ family.

    Attributes:
        family: Which γ formula
        n: Complex dimension
        lam: Weight λ
        k: Torus rank, quasi-nilpotent only
        p: Multi-index (length n elliptic, n-1 parabolic, k quasi-nilpotent)
        xi: ξ > 0, all Siegel families
        yprime: Heisenberg coordinates (n-1 nilpotent, n-k-1 quasi-nilpotent)
    """
    family: SpectrumFamily
    n: int
    lam: float
    k: Optional[int] = None
    p: Optional[MultiIndex] = None
    xi: Optional[float] = None
    yprime: Tuple[float, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", _family(self.family))
        object.__setattr__(self, "yprime", tuple(float(y) for y in self.yprime))
        if isinstance(self.p, (tuple, list)):
            object.__setattr__(self, "p", MultiIndex(tuple(self.p)))
        if not self.lam > -1:
            raise ValueError(f"Weight must satisfy lambda > -1, got {self.lam}")
        fam = self.family
        if fam is not SpectrumFamily.QUASI_NILPOTENT and self.k is not None:
            raise ValueError(f"k applies to the quasi-nilpotent family only, got k={self.k}")
        if fam is SpectrumFamily.QUASI_NILPOTENT and (self.k is None or not 1 <= self.k <= self.n - 2):
            raise ValueError(f"k must satisfy 1 <= k <= n-2, got k={self.k}, n={self.n}")
        self._expect("p", self.p.p if self.p is not None else None, self.p_length)
        self._expect("y'", self.yprime if self.yprime else None, self.y_length)
        if fam is SpectrumFamily.ELLIPTIC:
            if self.xi is not None:
                raise ValueError("The elliptic family takes no ξ")
        elif self.xi is None or not self.xi > 0:
            raise ValueError(f"ξ must be positive, got {self.xi}")

    def _expect(self, label: str, value, length: int) -> None:
        got = 0 if value is None else len(value)
        if got != length:
            raise ValueError(f"{label} must have length {length} for the {self.family.value} family, got {got}")

    @property
    def p_length(self) -> int:
        return _p_len(self.family, self.n, self.k)

    @property
    def y_length(self) -> int:
        return _y_len(self.family, self.n, self.k)

    @property
    def powers(self) -> Tuple[int, ...]:
        return () if self.p is None else self.p.p

    def grid_columns(self) -> Dict[str, Any]:
        """Row prefix for CSV export: p, then ξ, then y' components."""
        cols: Dict[str, Any] = {}
        if self.p_length:
            cols["p"] = str(self.p)
        if self.family is not SpectrumFamily.ELLIPTIC:
            cols["xi"] = self.xi
        for i, y in enumerate(self.yprime, start=1):
            cols[f"y{i}"] = y
        return cols

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family.value,
            "n": self.n,
            "lambda": self.lam,
            "k": self.k,
            "p": list(self.powers),
            "xi": self.xi,
            "yprime": list(self.yprime),
        }


@dataclass
class SpectrumRow:
    query: SpectrumQuery
    value: complex
    cross_residual: Optional[float] = None


@dataclass
class SpectrumTable:
    """
    γ values over a query grid.

    Attributes:
        rows: One row per query, in grid order
        representation: Which form produced `value`
        cross_representation: The form used for cross_residual, if any
        profile_name: Label of the profile
    """
    rows: List[SpectrumRow]
    representation: Representation
    cross_representation: Optional[Representation] = None
    profile_name: str = "profile"
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def values(self) -> np.ndarray:
        return np.array([r.value for r in self.rows])

    def max_cross_residual(self) -> Optional[float]:
        residuals = [r.cross_residual for r in self.rows if r.cross_residual is not None]
        return max(residuals) if residuals else None

    def to_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        columns = list(self.rows[0].query.grid_columns()) if self.rows else []
        header = columns + ["value"]
        with_cross = self.cross_representation is not None
        if with_cross:
            header.append("cross_residual")
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for row in self.rows:
                grid = row.query.grid_columns()
                line = [_cell(grid[c]) for c in columns] + [_cell(row.value)]
                if with_cross:
                    line.append(_cell(row.cross_residual))
                writer.writerow(line)
        return path

    def to_dict(self) -> Dict[str, Any]:
        return {
            "representation": self.representation.value,
            "cross_representation": None if self.cross_representation is None else self.cross_representation.value,
            "profile": self.profile_name,
            "max_cross_residual": self.max_cross_residual(),
            "rows": [
                {"query": r.query.to_dict(), "value": r.value, "cross_residual": r.cross_residual}
                for r in self.rows
            ],
            **self.metadata,
        }


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    if value is None:
        return ""
    if isinstance(value, complex):
        return repr(value)
    return format(float(value), ".17g")


def evaluate(
    query: SpectrumQuery,
    profile: Profile,
    beta: Optional[BetaBasis] = None,
    representation: Union[Representation, str] = Representation.BETA,
    radial_n: int = 40,
    laguerre_n: int = siegel.DEFAULT_LAGUERRE,
    hermite_n: int = siegel.DEFAULT_HERMITE,
) -> complex:
    """
    γ at one query point.

    The β- and A(β)-forms use `beta` (canonical when omitted); the moment
    form hands the profile the n moment coordinates directly.
    """
    rep = _representation(representation)
    beta = beta or BetaBasis.canonical(query.n)
    if beta.n != query.n:
        raise ValueError(f"β lives in R^{beta.n}, query has n={query.n}")
    p, y, xi, lam = query.powers, query.yprime, query.xi, query.lam
    fam = query.family

    if fam is SpectrumFamily.ELLIPTIC:
        if rep is Representation.BETA:
            return elliptic.gamma_elliptic_beta(profile, beta, lam, p, radial_n)
        if rep is Representation.MOMENT:
            return elliptic.gamma_elliptic_moment(profile, lam, p, radial_n)
        return elliptic.gamma_elliptic_Abeta(profile, beta, lam, p, radial_n)

    if fam is SpectrumFamily.PARABOLIC:
        if rep is Representation.BETA:
            return siegel.gamma_parabolic_beta(profile, beta, lam, p, xi, laguerre_n)
        if rep is Representation.MOMENT:
            return siegel.gamma_parabolic_moment(profile, lam, p, xi, laguerre_n)
        return siegel.gamma_parabolic_Abeta(profile, beta, lam, p, xi, laguerre_n)

    if fam is SpectrumFamily.NILPOTENT:
        if rep is Representation.BETA:
            return siegel.gamma_nilpotent_beta(profile, beta, lam, y, xi, laguerre_n, hermite_n)
        if rep is Representation.MOMENT:
            return siegel.gamma_nilpotent_moment(profile, lam, y, xi, laguerre_n, hermite_n)
        return siegel.gamma_nilpotent_Abeta(profile, beta, lam, y, xi, laguerre_n, hermite_n)

    if rep is Representation.BETA:
        return siegel.gamma_quasinilpotent_beta(profile, beta, lam, p, y, xi, laguerre_n, hermite_n)
    if rep is Representation.MOMENT:
        return siegel.gamma_quasinilpotent_moment(profile, lam, p, y, xi, laguerre_n, hermite_n)
    return siegel.gamma_quasinilpotent_Abeta(profile, beta, lam, p, y, xi, laguerre_n, hermite_n)


def cross_partner(representation: Representation) -> Representation:
    """β-form pairs with A(β); moment pairs with the canonical β-form."""
    return Representation.ABETA if representation is Representation.BETA else Representation.BETA


def standard_queries(
    family: Union[SpectrumFamily, str],
    n: int,
    lam: float,
    k: Optional[int] = None,
    p_max: int = STANDARD_P_MAX,
    xi_values: Sequence[float] = STANDARD_XI,
    y_values: Sequence[float] = STANDARD_Y,
) -> List[SpectrumQuery]:
    """The product grid p (|p| <= p_max) x ξ x y' for a family."""
    from ..toeplitz import enumerate_basis

    fam = _family(family)
    p_len, y_len = _p_len(fam, n, k), _y_len(fam, n, k)
    ps: List[Optional[MultiIndex]] = enumerate_basis(p_len, p_max) if p_len else [None]
    xis: List[Optional[float]] = [None] if fam is SpectrumFamily.ELLIPTIC else [float(x) for x in xi_values]
    ys = list(itertools.product(y_values, repeat=y_len))
    return [
        SpectrumQuery(family=fam, n=n, lam=lam, k=k, p=p, xi=xi, yprime=y)
        for p, xi, y in itertools.product(ps, xis, ys)
    ]


def _p_len(fam: SpectrumFamily, n: int, k: Optional[int]) -> int:
    return {SpectrumFamily.ELLIPTIC: n, SpectrumFamily.PARABOLIC: n - 1,
            SpectrumFamily.NILPOTENT: 0, SpectrumFamily.QUASI_NILPOTENT: k or 0}[fam]


def _y_len(fam: SpectrumFamily, n: int, k: Optional[int]) -> int:
    return {SpectrumFamily.ELLIPTIC: 0, SpectrumFamily.PARABOLIC: 0,
            SpectrumFamily.NILPOTENT: n - 1, SpectrumFamily.QUASI_NILPOTENT: n - (k or 0) - 1}[fam]


def evaluate_grid(
    queries: Sequence[SpectrumQuery],
    profile: Profile,
    beta: Optional[BetaBasis] = None,
    representation: Union[Representation, str] = Representation.BETA,
    cross_check: bool = False,
    radial_n: int = 40,
    laguerre_n: int = siegel.DEFAULT_LAGUERRE,
    hermite_n: int = siegel.DEFAULT_HERMITE,
    n_jobs: int = 1,
    profile_name: Optional[str] = None,
) -> SpectrumTable:
    """
    Evaluate every query; with cross_check, also the partner form and
    record |value - partner| per row.

    Rows are independent, so n_jobs > 1 spreads them over joblib threads.
    """
    rep = _representation(representation)
    partner = cross_partner(rep) if cross_check else None
    orders = dict(radial_n=radial_n, laguerre_n=laguerre_n, hermite_n=hermite_n)

    def run(query: SpectrumQuery) -> SpectrumRow:
        value = evaluate(query, profile, beta, rep, **orders)
        residual = None
        if partner is not None:
            partner_beta = None if rep is Representation.MOMENT else beta
            other = evaluate(query, profile, partner_beta, partner, **orders)
            residual = float(abs(value - other))
        return SpectrumRow(query=query, value=value, cross_residual=residual)

    rows = Parallel(n_jobs=n_jobs, prefer="threads")(delayed(run)(q) for q in queries)
    table = SpectrumTable(
        rows=list(rows),
        representation=rep,
        cross_representation=partner,
        profile_name=profile_name or getattr(profile, "name", "profile"),
    )
    logger.info(
        "Evaluated %d %s spectrum points (%s form)",
        len(queries), queries[0].family.value if queries else "-", rep.value,
    )
    return table
