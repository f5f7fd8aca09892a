"""
Truncated Toeplitz operators on A^2_λ(B^n).

The compression of T_a to polynomials of degree <= d is assembled in the
orthonormal monomial basis e_p = z^p/‖z^p‖_λ:

    M[p][q] = <a·e_q, e_p>_λ = ∫ a z^q z̄^p dv_λ / (‖z^p‖ ‖z^q‖)

Siegel-domain symbols are pulled back to the ball through the Cayley map
before assembly.
"""

import csv
import itertools
import logging
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import gammaln

from .domains import cayley_to_siegel
from .models import (
    DomainKind,
    MetadataMismatchError,
    MultiIndex,
    QuadratureError,
    SymbolSpec,
)
from .moment import symbol_on_coords
from .quadrature.ball import BallRule, ChunkedRule

logger = logging.getLogger(__name__)

# Hermitian residual tolerated for real symbols
HERMITIAN_TOL = 1e-10

SymbolLike = Union[SymbolSpec, Callable[[np.ndarray], np.ndarray]]


def monomial_norm_sq(n: int, lam: float, p: MultiIndex) -> float:
    """‖z^p‖^2_λ = p! Γ(n+1+λ) / Γ(n+|p|+λ+1)."""
    if not lam > -1:
        raise ValueError(f"Weight must satisfy lambda > -1, got {lam}")
    if len(p) != n:
        raise ValueError(f"Multi-index {p} has length {len(p)}, expected {n}")
    log_pfact = float(np.sum(gammaln(np.asarray(p.p, dtype=float) + 1.0)))
    return float(np.exp(log_pfact + gammaln(n + 1 + lam) - gammaln(n + p.order + lam + 1)))


def enumerate_basis(n: int, d: int) -> List[MultiIndex]:
    """
    All |p| <= d in graded lexicographic order.

    Within a degree, larger leading entries come first:
    n=2, d=1 gives (0,0), (1,0), (0,1).
    """
    if d < 0:
        raise ValueError(f"Degree must be nonnegative, got {d}")
    basis = []
    for degree in range(d + 1):
        level = [p for p in itertools.product(range(degree + 1), repeat=n) if sum(p) == degree]
        basis.extend(MultiIndex(p) for p in sorted(level, reverse=True))
    return basis


@dataclass
class ToeplitzMatrix:
    """
    Degree-d compression of T_a with its provenance.

    Attributes:
        entries: Dense (N, N) complex matrix, rows and columns follow `basis`
        basis: Graded lexicographic multi-indices
        n, lam, degree: Space and truncation
        symbol_name: Label of the symbol
        rule_description: Quadrature rule used for assembly
    """
    entries: np.ndarray
    basis: List[MultiIndex]
    n: int
    lam: float
    degree: int
    symbol_name: str = "symbol"
    rule_description: str = ""
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def diagonal(self) -> np.ndarray:
        return np.diag(self.entries).copy()

    def hermitian_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0))

    def off_diagonal_max(self) -> float:
        off = self.entries - np.diag(np.diag(self.entries))
        return float(np.max(np.abs(off), initial=0.0))

    def truncate(self, d: int) -> "ToeplitzMatrix":
        """The degree-d compression, read off as the leading block."""
        if not 0 <= d <= self.degree:
            raise ValueError(f"Cannot truncate a degree-{self.degree} matrix to degree {d}")
        keep = [i for i, b in enumerate(self.basis) if b.order <= d]
        return ToeplitzMatrix(
            entries=self.entries[np.ix_(keep, keep)].copy(),
            basis=[self.basis[i] for i in keep],
            n=self.n,
            lam=self.lam,
            degree=d,
            symbol_name=self.symbol_name,
            rule_description=self.rule_description,
            metadata=dict(self.metadata),
        )

    def same_space(self, other: "ToeplitzMatrix") -> bool:
        return (
            self.n == other.n
            and self.lam == other.lam
            and self.degree == other.degree
            and [b.p for b in self.basis] == [b.p for b in other.basis]
        )

    def to_csv(self, path: Union[str, Path]) -> Path:
        """Row-major CSV; the first line is a '#' comment listing the basis."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as fh:
            fh.write("# basis: " + " ".join(str(b) for b in self.basis) + "\n")
            writer = csv.writer(fh)
            for row in self.entries:
                writer.writerow([repr(complex(x)) for x in row])
        return path

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "lambda": self.lam,
            "degree": self.degree,
            "dim": self.dim,
            "symbol": self.symbol_name,
            "rule": self.rule_description,
            "basis": [str(b) for b in self.basis],
            "hermitian_residual": self.hermitian_residual(),
            "off_diagonal_max": self.off_diagonal_max(),
            **self.metadata,
        }


def transport_symbol(a: Callable[[np.ndarray], np.ndarray]) -> Callable[[np.ndarray], np.ndarray]:
    """Pull a Siegel-domain symbol back to the ball: z ↦ a(φ(z))."""

    def pulled_back(z: np.ndarray) -> np.ndarray:
        return a(cayley_to_siegel(np.asarray(z, dtype=complex)))

    return pulled_back


def symbol_on_ball(symbol: SymbolLike) -> Callable[[np.ndarray], np.ndarray]:
    """A ball-coordinate callable for a SymbolSpec or a raw callable."""
    if isinstance(symbol, SymbolSpec):
        a = symbol_on_coords(symbol)
        if symbol.action.domain_kind is DomainKind.SIEGEL:
            return transport_symbol(a)
        return a
    return symbol


def _monomials(z: np.ndarray, exponents: np.ndarray) -> np.ndarray:
    """V[i, q] = z_i^q for points (k, n) and exponents (N, n)."""
    return np.prod(z[:, None, :] ** exponents[None, :, :], axis=2)


def _assemble_direct(
    a: Callable[[np.ndarray], np.ndarray],
    exponents: np.ndarray,
    rule: ChunkedRule,
) -> Tuple[np.ndarray, bool]:
    """Unnormalized Gram sums node by node; any chunked rule."""
    N = exponents.shape[0]
    M = np.zeros((N, N), dtype=complex)
    real_symbol = True
    rows = max(1, rule.chunk_size // N)
    for count, (z, w) in enumerate(rule.chunks(rows), start=1):
        V = _monomials(z, exponents)
        values = np.asarray(a(z))
        real_symbol = real_symbol and not np.iscomplexobj(values)
        M += V.conj().T @ ((w * values)[:, None] * V)
        logger.debug("toeplitz chunk %d: %d nodes", count, z.shape[0])
    return M, real_symbol


def _assemble_fourier(
    a: Callable[[np.ndarray], np.ndarray],
    exponents: np.ndarray,
    rule: BallRule,
) -> Tuple[np.ndarray, bool]:
    """
    Same sums as _assemble_direct, grouped by radial node.

    On a fixed radius the angular sum of a·z^q·z̄^p is a discrete Fourier
    coefficient of the symbol at (p - q) mod angular_N, so one fftn per
    radial node replaces the (nodes × N) Vandermonde products.
    """
    n = rule.n
    Mang = rule.angles.shape[0]
    shape = (Mang,) * n
    grid = np.stack(np.meshgrid(*[rule.angles] * n, indexing="ij"), axis=-1).reshape(-1, n)
    phase = np.exp(1j * grid)

    P, Q = exponents[:, None, :], exponents[None, :, :]
    flat = np.ravel_multi_index(tuple(((P - Q) % Mang)[..., j] for j in range(n)), shape)
    powers = P + Q
    top = int(powers.max(initial=0))

    N = exponents.shape[0]
    M = np.zeros((N, N), dtype=complex)
    real_symbol = True
    step = max(1, rule.chunk_size // grid.shape[0])
    for start in range(0, rule.radial.size, step):
        stop = min(start + step, rule.radial.size)
        rho = np.sqrt(rule.radial.nodes[start:stop])
        z = (rho[:, None, :] * phase[None, :, :]).reshape(-1, n)
        values = np.asarray(a(z))
        real_symbol = real_symbol and not np.iscomplexobj(values)
        coeffs = np.fft.fftn(values.reshape((stop - start,) + shape), axes=tuple(range(1, n + 1)))
        coeffs = coeffs.reshape(stop - start, -1)[:, flat]
        table = rho[:, :, None] ** np.arange(top + 1)[None, None, :]
        radial = np.ones((stop - start, N, N))
        for j in range(n):
            radial *= table[:, j, :][:, powers[..., j]]
        M += np.einsum("r,rpq,rpq->pq", rule.radial.weights[start:stop], radial, coeffs)
        logger.debug("toeplitz radial nodes %d-%d", start, stop)
    M *= rule.radial_scale * rule.angular_weight
    return M, real_symbol


def assemble_toeplitz(
    symbol: SymbolLike,
    lam: float,
    d: int,
    rule: ChunkedRule,
    fourier: bool = True,
) -> ToeplitzMatrix:
    """
    Assemble M[p][q] = <a·e_q, e_p>_λ with the ball rule.

    Args:
        symbol: SymbolSpec (Siegel actions are transported automatically)
            or a callable on ball coordinate arrays (k, n) -> (k,)
        lam: Weight λ; must match the rule
        d: Truncation degree
        rule: Ball product rule
        fourier: Group the angular sums into FFTs when the rule is a
            BallRule; the result equals the node-by-node sum

    Returns:
        ToeplitzMatrix
    """
    if rule.lam != lam:
        raise QuadratureError(f"Rule was built for lambda={rule.lam}, assembly asked for {lam}")
    n = rule.n
    if isinstance(symbol, SymbolSpec) and symbol.action.n != n:
        raise QuadratureError(f"Rule has dimension {n} but the symbol's action has {symbol.action.n}")
    a = symbol_on_ball(symbol)
    basis = enumerate_basis(n, d)
    exponents = np.array([b.p for b in basis], dtype=int)
    if isinstance(rule, BallRule) and fourier:
        M, real_symbol = _assemble_fourier(a, exponents, rule)
    else:
        M, real_symbol = _assemble_direct(a, exponents, rule)
    norms = np.sqrt([monomial_norm_sq(n, lam, b) for b in basis])
    M /= np.outer(norms, norms)

    name = symbol.name if isinstance(symbol, SymbolSpec) else getattr(symbol, "__name__", "symbol")
    result = ToeplitzMatrix(
        entries=M,
        basis=basis,
        n=n,
        lam=lam,
        degree=d,
        symbol_name=name,
        rule_description=rule.description,
    )
    if real_symbol:
        residual = result.hermitian_residual()
        if residual > HERMITIAN_TOL:
            warnings.warn(f"Toeplitz matrix for real symbol '{name}' has Hermitian residual {residual:.3e}")
    logger.info("Assembled %dx%d Toeplitz matrix for '%s'", len(basis), len(basis), name)
    return result


def commutator_norm(
    A: ToeplitzMatrix,
    B: ToeplitzMatrix,
    buffer: int = 2,
    block: Optional[int] = None,
) -> float:
    """
    ‖AB - BA‖_F on a central block, divided by the block's dimension.

    The block is |p| <= block, or |p| <= d - buffer when block is None. It
    keeps away from the truncation edge, where compressions of products
    differ most from products of compressions.
    """
    if not A.same_space(B):
        raise MetadataMismatchError(
            f"Cannot compare matrices for (n={A.n}, lambda={A.lam}, d={A.degree}) and "
            f"(n={B.n}, lambda={B.lam}, d={B.degree})"
        )
    if not 0 <= buffer <= A.degree:
        raise ValueError(f"Buffer must lie in [0, {A.degree}], got {buffer}")
    top = A.degree - buffer if block is None else int(block)
    if not 0 <= top <= A.degree:
        raise ValueError(f"Central block degree must lie in [0, {A.degree}], got {top}")
    C = A.entries @ B.entries - B.entries @ A.entries
    keep = np.array([b.order <= top for b in A.basis])
    central = C[np.ix_(keep, keep)]
    return float(np.linalg.norm(central, "fro") / int(keep.sum()))


# Norms below this count as converged (quadrature noise level)
TREND_FLOOR = 1e-6


@dataclass
class CommutatorTrend:
    """
    Commutator norms of one symbol pair on a fixed central block along increasing degrees.

    Attributes:
        degrees: Truncation degrees, increasing
        norms: commutator_norm at each degree, all on |p| <= block
        buffer: Distance from the smallest degree to the block edge
        block: Degree of the central block shared by every entry
        slack: Allowed growth factor between consecutive degrees
    """
    degrees: List[int]
    norms: List[float]
    buffer: int
    block: int
    slack: float = 1.1

    @property
    def decreasing(self) -> bool:
        pairs = zip(self.norms, self.norms[1:])
        return all(later <= self.slack * earlier or later <= TREND_FLOOR for earlier, later in pairs)

    @property
    def final(self) -> float:
        return self.norms[-1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degrees": self.degrees,
            "norms": self.norms,
            "buffer": self.buffer,
            "block": self.block,
            "slack": self.slack,
            "floor": TREND_FLOOR,
            "decreasing": self.decreasing,
        }


def commutator_trend(
    a: SymbolLike,
    b: SymbolLike,
    lam: float,
    degrees: Sequence[int],
    rule: ChunkedRule,
    buffer: int = 2,
    slack: float = 1.1,
) -> CommutatorTrend:
    """
    commutator_norm of T_a, T_b at each degree on one fixed central block.

    The block is |p| <= min(degrees) - buffer. On it the compressed
    commutator differs from that of the full operators by terms through
    the tail above the truncation degree, so for commuting T_a, T_b the
    norms fall as the degree grows. Both matrices are assembled once at
    the largest degree; lower degrees are leading blocks of it, since
    entries do not depend on truncation.
    """
    degrees = sorted(set(int(d) for d in degrees))
    if not degrees:
        raise ValueError("At least one degree is required")
    if degrees[0] < buffer:
        raise ValueError(f"Degrees must be >= buffer ({buffer}), got {degrees[0]}")
    block = degrees[0] - buffer
    top = degrees[-1]
    A = assemble_toeplitz(a, lam, top, rule)
    B = assemble_toeplitz(b, lam, top, rule)
    norms = [commutator_norm(A.truncate(d), B.truncate(d), buffer, block=block) for d in degrees]
    trend = CommutatorTrend(degrees=degrees, norms=norms, buffer=buffer, block=block, slack=slack)
    logger.info("commutator trend over degrees %s on |p| <= %d: %s (decreasing=%s)",
                degrees, block, ", ".join(f"{v:.3e}" for v in norms), trend.decreasing)
    return trend
