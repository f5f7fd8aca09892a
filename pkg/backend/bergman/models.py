"""
Data models for the Bergman-space toolkit.

This module defines the value types shared by every other module:
domain descriptions, points, multi-indices, partitions, β-bases,
symbol definitions, plus the result objects returned by searches
that may legitimately come back empty.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np


# Points closer than this to the boundary (in the defining function) are rejected
BOUNDARY_GUARD = 1e-14

# Rank tolerance for β-basis admission
RANK_TOL = 1e-10

# Orthogonality tolerance for the projection formulas
ORTHOGONALITY_TOL = 1e-12


class DomainError(ValueError):
    """A point lies outside the domain, inside the guard band, or on a pole."""


class DimensionMismatchError(ValueError):
    """Vector length does not match the complex dimension."""


class DomainMismatchError(ValueError):
    """An operation for one domain realization received the other one."""


class BasisError(ValueError):
    """Invalid β-basis (rank, shape or orthogonality)."""


class PartitionError(ValueError):
    """Invalid partition for the requested construction."""


class QuadratureError(ValueError):
    """Invalid quadrature orders or rule/dimension mismatch."""


class MetadataMismatchError(ValueError):
    """Toeplitz matrices built for different (n, λ, d, basis) were combined."""


class DomainKind(Enum):
    """The two realizations of the unbounded/bounded model domain."""
    BALL = "ball"
    SIEGEL = "siegel"


@dataclass(frozen=True)
class DomainSpec:
    """
    A weighted domain: the unit ball B^n or the Siegel domain D_n with weight λ.

    Attributes:
        kind: Ball or Siegel realization
        n: Complex dimension (n >= 1)
        lam: Weight parameter, λ > -1
    """
    kind: DomainKind
    n: int
    lam: float = 0.0

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"Complex dimension must be a positive integer, got {self.n}")
        if not self.lam > -1:
            raise ValueError(f"Weight must satisfy lambda > -1, got {self.lam}")

    def with_kind(self, kind: DomainKind) -> "DomainSpec":
        return DomainSpec(kind=kind, n=self.n, lam=self.lam)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "n": self.n, "lambda": self.lam}


def defining_function(kind: DomainKind, coords: np.ndarray) -> np.ndarray:
    """
    1 - |z|^2 on the ball, Im(z_n) - |z'|^2 on the Siegel domain.

    Works on arrays of shape (..., n); positive exactly inside the domain.
    """
    z = np.asarray(coords, dtype=complex)
    if kind is DomainKind.BALL:
        return 1.0 - np.sum(np.abs(z) ** 2, axis=-1)
    return z[..., -1].imag - np.sum(np.abs(z[..., :-1]) ** 2, axis=-1)


@dataclass(frozen=True, eq=False)
class Point:
    """
    A point z = (z', z_n) strictly inside a domain.

    Construction validates the strict domain inequality together with the
    numerical guard band, so every Point in circulation is usable.
    """
    coords: np.ndarray
    domain: DomainSpec

    def __post_init__(self) -> None:
        z = np.array(self.coords, dtype=complex).reshape(-1)
        if z.shape[0] != self.domain.n:
            raise DimensionMismatchError(
                f"Point has {z.shape[0]} coordinates, domain has dimension {self.domain.n}"
            )
        if not np.all(np.isfinite(z)):
            raise DomainError(f"Point has non-finite coordinates: {z}")
        rho = float(defining_function(self.domain.kind, z))
        if rho <= BOUNDARY_GUARD:
            raise DomainError(
                f"Point {z} is outside {self.domain.kind.value} domain or boundary-degenerate "
                f"(defining function {rho:.3e})"
            )
        z.setflags(write=False)
        object.__setattr__(self, "coords", z)

    @property
    def n(self) -> int:
        return self.domain.n

    @property
    def kind(self) -> DomainKind:
        return self.domain.kind

    @property
    def zprime(self) -> np.ndarray:
        return self.coords[:-1]

    @property
    def zn(self) -> complex:
        return complex(self.coords[-1])

    @property
    def rho(self) -> float:
        """Value of the defining function at this point."""
        return float(defining_function(self.domain.kind, self.coords))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "domain": self.domain.to_dict(),
            "coords": [{"re": float(c.real), "im": float(c.imag)} for c in self.coords],
        }


@dataclass(frozen=True)
class MultiIndex:
    """Multi-index p = (p_1, ..., p_n) of nonnegative integers."""
    p: Tuple[int, ...]

    def __post_init__(self) -> None:
        if any(int(v) != v or v < 0 for v in self.p):
            raise ValueError(f"Multi-index entries must be nonnegative integers, got {self.p}")
        object.__setattr__(self, "p", tuple(int(v) for v in self.p))

    @property
    def order(self) -> int:
        """|p| = p_1 + ... + p_n"""
        return sum(self.p)

    def __len__(self) -> int:
        return len(self.p)

    def __iter__(self):
        return iter(self.p)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.p) + ")"


@dataclass(frozen=True)
class Partition:
    """
    Partition k = (k_1, ..., k_m) used to build block β-bases.

    The sum constraint depends on the construction, so it is checked by
    the builders rather than here.
    """
    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.parts) == 0:
            raise PartitionError("Partition must have at least one part")
        if any(int(v) != v or v < 1 for v in self.parts):
            raise PartitionError(f"Partition parts must be positive integers, got {self.parts}")
        object.__setattr__(self, "parts", tuple(int(v) for v in self.parts))

    @property
    def total(self) -> int:
        return sum(self.parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse "k1,k2,..." as used on the command line."""
        try:
            return cls(tuple(int(tok) for tok in text.split(",") if tok.strip()))
        except ValueError as exc:
            raise PartitionError(f"Cannot parse partition '{text}': {exc}") from exc


@dataclass(frozen=True, eq=False)
class BetaBasis:
    """
    Linearly independent set β = {v_1, ..., v_m} in R^n.

    The stacked m x n matrix A(β) has the v_j as rows. The subgroup
    H = exp(R<β>) is implied by the span and never materialized.
    """
    matrix: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.matrix, dtype=float)
        if a.ndim == 1:
            a = a.reshape(1, -1)
        if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
            raise BasisError(f"β must be a non-empty list of vectors, got shape {a.shape}")
        m, n = a.shape
        if m > n:
            raise BasisError(f"β has {m} vectors in R^{n}; at most n are independent")
        if not np.all(np.isfinite(a)):
            raise BasisError("β contains non-finite entries")
        rank = np.linalg.matrix_rank(a, tol=RANK_TOL)
        if rank != m:
            raise BasisError(f"β vectors are linearly dependent (rank {rank} < {m})")
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "BetaBasis":
        return cls(np.asarray(rows, dtype=float))

    @classmethod
    def canonical(cls, n: int) -> "BetaBasis":
        return cls(np.eye(n))

    @classmethod
    def parse(cls, text: str) -> "BetaBasis":
        """Parse "v1;v2;..." with comma-separated components."""
        try:
            rows = [[float(x) for x in row.split(",")] for row in text.split(";") if row.strip()]
        except ValueError as exc:
            raise BasisError(f"Cannot parse β '{text}': {exc}") from exc
        if len({len(r) for r in rows}) > 1:
            raise BasisError(f"β rows have different lengths: '{text}'")
        return cls.from_rows(rows)

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        return self.matrix.shape[1]

    @property
    def vectors(self) -> List[np.ndarray]:
        return [row for row in self.matrix]

    def is_orthogonal(self, tol: float = ORTHOGONALITY_TOL) -> bool:
        gram = self.matrix @ self.matrix.T
        off = gram - np.diag(np.diag(gram))
        scale = max(1.0, float(np.max(np.abs(np.diag(gram)))))
        return bool(np.max(np.abs(off), initial=0.0) <= tol * scale)

    def to_dict(self) -> Dict[str, Any]:
        return {"rows": self.matrix.tolist(), "m": self.m, "n": self.n}


# Profile on R^m; receives arrays of shape (..., m) and returns shape (...)
ProfileFn = Callable[[np.ndarray], np.ndarray]


@dataclass(eq=False)
class SymbolSpec:
    """
    A β-symbol a = f(a_1, ..., a_m) for one of the five group actions.

    `action` is a GroupAction instance (see group_actions); typed loosely
    here to keep this module free of import cycles.
    """
    action: Any
    beta: BetaBasis
    profile: ProfileFn
    name: str = "symbol"

    def __post_init__(self) -> None:
        if self.beta.n != self.action.n:
            raise BasisError(
                f"β lives in R^{self.beta.n} but the action has dimension {self.action.n}"
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "action": self.action.label,
            "beta": self.beta.to_dict(),
        }


@dataclass
class NotInSameFiber:
    """Returned by orbit transport when the two points have different μ^G."""
    mismatch: float
    tol: float

    def __bool__(self) -> bool:
        return False

    def to_dict(self) -> Dict[str, Any]:
        return {"in_same_fiber": False, "mismatch": self.mismatch, "tol": self.tol}


@dataclass
class WitnessNotFound:
    """Returned by fiber_witness when no separating pair turned up."""
    trials: int
    best_gap: float = 0.0

    def __bool__(self) -> bool:
        return False

    def to_dict(self) -> Dict[str, Any]:
        return {"found": False, "trials": self.trials, "best_gap": self.best_gap}


@dataclass
class FiberWitness:
    """
    Two points with equal μ^H separated by a discriminator.

    Attributes:
        z, w: The witness pair
        moment_gap: ||μ^H(z) - μ^H(w)||
        discriminator_gap: |disc(z) - disc(w)|
        attempts: Number of trials used
    """
    z: Point
    w: Point
    moment_gap: float
    discriminator_gap: float
    attempts: int = 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "found": True,
            "z": self.z.to_dict(),
            "w": self.w.to_dict(),
            "moment_gap": self.moment_gap,
            "discriminator_gap": self.discriminator_gap,
            "attempts": self.attempts,
        }


@dataclass
class CheckResult:
    """Outcome of one invariant check in the verification battery."""
    name: str
    passed: bool
    residual: float
    threshold: float
    detail: str = ""
    samples: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "threshold": self.threshold,
            "detail": self.detail,
            "samples": self.samples,
        }


@dataclass
class VerificationReport:
    """Collected CheckResults with summary properties."""
    checks: List[CheckResult] = field(default_factory=list)
    fault: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "total_checks": len(self.checks),
            "failed_checks": len(self.failures),
            "fault": self.fault,
            "checks": [c.to_dict() for c in self.checks],
        }
