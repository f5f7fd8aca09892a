"""
Run and quadrature configuration.

Quadrature defaults can be overridden from the environment (a local .env
file is honoured):
    BERGMAN_QUAD_RADIAL     (default: per n) Jacobi order per simplex axis
    BERGMAN_QUAD_ANGULAR    (default: per n) trapezoid order per angle, even
    BERGMAN_QUAD_LAGUERRE   (default: 64)
    BERGMAN_QUAD_HERMITE    (default: 64)
    BERGMAN_CHUNK_SIZE      (default: 262144) nodes per assembly chunk
    BERGMAN_RECORD_TIMING   (default: true)  embed wall-clock timing in reports
"""

import os
from typing import List, Optional, Tuple

import dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .group_actions import ActionKind, GroupAction, create_action
from .models import BetaBasis, Partition
from .moment import partition_beta_elliptic, partition_beta_parabolic, partition_beta_quasinilpotent
from .profiles import Profile, available_profiles, create_profile
from .quadrature.ball import default_ball_orders

dotenv.load_dotenv()

# Accepted values of the string-valued options
PAIRS = ("beta", "re-im")
FAMILIES = ("elliptic", "parabolic", "nilpotent", "quasinilpotent")
REPRESENTATIONS = ("beta", "moment", "abeta")
FAULTS = ("moment-sign",)

# Elliptic γ order when BERGMAN_QUAD_RADIAL is unset
SPECTRAL_RADIAL_DEFAULT = 40


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"Environment variable {name} must be an integer, got '{raw}'") from None


def _env_optional_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return None
    return _env_int(name, 0)


def record_timing() -> bool:
    """False when BERGMAN_RECORD_TIMING is 0/false/no/off."""
    return os.getenv("BERGMAN_RECORD_TIMING", "true").strip().lower() not in {"0", "false", "no", "off"}


class QuadratureConfig(BaseModel):
    """Quadrature orders shared by assembly and spectral evaluation."""

    # None picks the ball orders from default_ball_orders(n)
    radial_n: Optional[int] = Field(default_factory=lambda: _env_optional_int("BERGMAN_QUAD_RADIAL"))
    angular_n: Optional[int] = Field(default_factory=lambda: _env_optional_int("BERGMAN_QUAD_ANGULAR"))
    laguerre_n: int = Field(default_factory=lambda: _env_int("BERGMAN_QUAD_LAGUERRE", 64))
    hermite_n: int = Field(default_factory=lambda: _env_int("BERGMAN_QUAD_HERMITE", 64))
    chunk_size: int = Field(default_factory=lambda: _env_int("BERGMAN_CHUNK_SIZE", 262144))

    @field_validator("radial_n", "laguerre_n", "hermite_n")
    @classmethod
    def _positive_order(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError(f"Quadrature orders must be >= 1, got {v}")
        return v

    @field_validator("angular_n")
    @classmethod
    def _even_angular(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and (v < 2 or v % 2):
            raise ValueError(f"Angular order must be even and >= 2, got {v}")
        return v

    @field_validator("chunk_size")
    @classmethod
    def _chunk(cls, v: int) -> int:
        if v < 1024:
            raise ValueError(f"Chunk size must be >= 1024, got {v}")
        return v

    def ball_orders(self, n: int) -> Tuple[int, int]:
        """(radial_N, angular_N) for B^n; unset orders fall back to the per-n defaults."""
        radial, angular = default_ball_orders(n)
        return (
            radial if self.radial_n is None else self.radial_n,
            angular if self.angular_n is None else self.angular_n,
        )

    @property
    def spectral_radial(self) -> int:
        """Jacobi order of the one-dimensional elliptic γ rules."""
        return SPECTRAL_RADIAL_DEFAULT if self.radial_n is None else self.radial_n


class RunConfig(BaseModel):
    """
    Every parameter a CLI command can receive, validated before dispatch.

    The resolved model is embedded in each report via model_dump().
    """

    model_config = ConfigDict(populate_by_name=True)

    command: str
    n: int = 2
    lam: float = Field(default=0.0, alias="lambda")
    degree: int = 4
    action: str = "elliptic"
    k: Optional[int] = None
    beta: Optional[str] = None
    partition: Optional[str] = None
    profile: str = "reciprocal"
    profile_args: List[float] = Field(default_factory=list)
    profile_weights: Optional[List[float]] = None
    family: str = "elliptic"
    representation: str = "beta"
    cross_check: bool = False
    p_max: int = 2
    grid_xi: List[float] = Field(default_factory=lambda: [0.25, 0.5, 1.0, 2.0, 4.0])
    grid_y: List[float] = Field(default_factory=lambda: [-2.0, -1.0, 0.0, 1.0, 2.0])
    points: List[str] = Field(default_factory=list)
    check_invariance: bool = False
    buffer: int = 2
    pair: str = "beta"
    samples: int = 50
    trend: List[int] = Field(default_factory=list)
    fault: Optional[str] = None
    seed: int = 0
    tol: Optional[float] = None
    out: str = "bergman_out"
    quad: QuadratureConfig = Field(default_factory=QuadratureConfig)

    @field_validator("n")
    @classmethod
    def _dimension(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"n must be >= 1, got {v}")
        return v

    @field_validator("lam")
    @classmethod
    def _weight(cls, v: float) -> float:
        if not v > -1:
            raise ValueError(f"lambda must be > -1, got {v}")
        return v

    @field_validator("degree", "p_max", "buffer", "samples")
    @classmethod
    def _nonnegative(cls, v: int) -> int:
        if v < 0:
            raise ValueError(f"Expected a nonnegative integer, got {v}")
        return v

    @field_validator("profile")
    @classmethod
    def _known_profile(cls, v: str) -> str:
        if v.lower() not in available_profiles():
            supported = ", ".join(f"'{p}'" for p in available_profiles())
            raise ValueError(f"Unknown profile: '{v}'. Supported: {supported}")
        return v.lower()

    @field_validator("pair")
    @classmethod
    def _known_pair(cls, v: str) -> str:
        if v not in PAIRS:
            supported = ", ".join(f"'{p}'" for p in PAIRS)
            raise ValueError(f"Unknown symbol pair: '{v}'. Supported: {supported}")
        return v

    @field_validator("grid_xi")
    @classmethod
    def _positive_xi(cls, v: List[float]) -> List[float]:
        if any(x <= 0 for x in v):
            raise ValueError(f"ξ grid values must be positive, got {v}")
        return v

    @model_validator(mode="after")
    def _cross_field(self) -> "RunConfig":
        kind = ActionKind(self.action) if self.action in {a.value for a in ActionKind} else None
        if kind is None:
            supported = ", ".join(f"'{a.value}'" for a in ActionKind)
            raise ValueError(f"Unknown action: '{self.action}'. Supported: {supported}")
        if kind is ActionKind.QUASI_NILPOTENT or self.family == "quasinilpotent":
            if self.k is None or not 1 <= self.k <= self.n - 2:
                raise ValueError(f"k must satisfy 1 <= k <= n-2 for the quasi-nilpotent case, got k={self.k}, n={self.n}")
        if self.buffer > self.degree:
            raise ValueError(f"buffer ({self.buffer}) cannot exceed degree ({self.degree})")
        if self.trend and min(self.trend) < self.buffer:
            raise ValueError(f"Trend degrees must be >= buffer ({self.buffer}), got {self.trend}")
        if self.beta is not None:
            basis = BetaBasis.parse(self.beta)
            if basis.n != self.n:
                raise ValueError(f"β rows have length {basis.n}, expected n={self.n}")
        if self.partition is not None:
            Partition.parse(self.partition)
        if self.family not in FAMILIES:
            supported = ", ".join(f"'{f}'" for f in FAMILIES)
            raise ValueError(f"Unknown family: '{self.family}'. Supported: {supported}")
        if self.representation not in REPRESENTATIONS:
            supported = ", ".join(f"'{r}'" for r in REPRESENTATIONS)
            raise ValueError(f"Unknown representation: '{self.representation}'. Supported: {supported}")
        if self.fault is not None and self.fault not in FAULTS:
            raise ValueError(f"Unknown fault: '{self.fault}'. Supported: 'moment-sign'")
        return self

    def action_obj(self) -> GroupAction:
        k = self.k if self.action == ActionKind.QUASI_NILPOTENT.value else None
        return create_action(self.action, self.n, k)

    def beta_basis(self, action: Optional[str] = None) -> BetaBasis:
        """
        The explicit β if given, else the partition β for `action`
        (default: the configured action), else the canonical basis.
        """
        if self.beta is not None:
            return BetaBasis.parse(self.beta)
        if self.partition is None:
            return BetaBasis.canonical(self.n)
        parts = Partition.parse(self.partition)
        kind = action or self.action
        if kind == ActionKind.QUASI_ELLIPTIC.value:
            return partition_beta_elliptic(parts)
        if kind == ActionKind.QUASI_PARABOLIC.value:
            return partition_beta_parabolic(parts)
        if kind == ActionKind.QUASI_NILPOTENT.value:
            return partition_beta_quasinilpotent(parts, self.n)
        raise ValueError(f"Partitions define β only for elliptic, parabolic and quasinilpotent, got '{kind}'")

    def profile_obj(self, m: int) -> Profile:
        """The configured profile for m coordinates; weights, when given, must number m."""
        if self.profile_weights is not None and len(self.profile_weights) != m:
            raise ValueError(
                f"Profile weights have {len(self.profile_weights)} entries but the symbol has {m} coordinates"
            )
        return create_profile(self.profile, weights=self.profile_weights, params=self.profile_args)
