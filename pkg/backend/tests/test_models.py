import dataclasses
import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[2]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from backend.bergman.group_actions import create_action  # noqa: E402
from backend.bergman.models import (  # noqa: E402
    BasisError,
    BetaBasis,
    CheckResult,
    DimensionMismatchError,
    DomainError,
    DomainKind,
    DomainSpec,
    MultiIndex,
    NotInSameFiber,
    Partition,
    PartitionError,
    Point,
    SymbolSpec,
    VerificationReport,
    WitnessNotFound,
)
from backend.bergman.profiles import RatioProfile  # noqa: E402


BALL2 = DomainSpec(DomainKind.BALL, 2)
SIEGEL2 = DomainSpec(DomainKind.SIEGEL, 2)


def test_domain_spec_rejects_bad_weight_and_dimension():
    with pytest.raises(ValueError):
        DomainSpec(DomainKind.BALL, 2, lam=-1.0)
    with pytest.raises(ValueError):
        DomainSpec(DomainKind.BALL, 0)
    assert BALL2.with_kind(DomainKind.SIEGEL) == SIEGEL2
    assert BALL2.to_dict() == {"kind": "ball", "n": 2, "lambda": 0.0}


def test_point_validates_domain_membership():
    z = Point([0.5, 0.1j], BALL2)
    assert z.rho == pytest.approx(1 - 0.25 - 0.01)
    assert z.zn == 0.1j
    with pytest.raises(DomainError):
        Point([1.0, 0.0], BALL2)
    with pytest.raises(DomainError):
        Point([0.0, np.nan], BALL2)
    with pytest.raises(DimensionMismatchError):
        Point([0.1, 0.1, 0.1], BALL2)


def test_siegel_point_uses_siegel_defining_function():
    w = Point([0.5, 1j], SIEGEL2)
    assert w.rho == pytest.approx(0.75)
    with pytest.raises(DomainError):
        Point([1.0, 1j], SIEGEL2)


def test_point_is_immutable():
    z = Point([0.2, 0.3], BALL2)
    with pytest.raises(dataclasses.FrozenInstanceError):
        z.domain = SIEGEL2
    with pytest.raises(ValueError):
        z.coords[0] = 0.9


def test_point_to_dict_splits_complex_coordinates():
    payload = Point([0.25 + 0.5j, 0.0], BALL2).to_dict()
    assert payload["coords"][0] == {"re": 0.25, "im": 0.5}
    assert payload["domain"]["kind"] == "ball"


def test_multi_index():
    p = MultiIndex((2, 0, 1))
    assert p.order == 3
    assert len(p) == 3
    assert str(p) == "(2,0,1)"
    with pytest.raises(ValueError):
        MultiIndex((1, -1))


def test_partition_parse():
    assert Partition.parse("1,2").parts == (1, 2)
    assert Partition.parse("2, 2, 1").total == 5
    with pytest.raises(PartitionError):
        Partition.parse("1,0")
    with pytest.raises(PartitionError):
        Partition.parse("a,b")
    with pytest.raises(PartitionError):
        Partition(())


def test_beta_basis_admission():
    beta = BetaBasis.parse("1,1,0;0,0,1")
    assert (beta.m, beta.n) == (2, 3)
    assert beta.is_orthogonal()
    assert not BetaBasis.from_rows([[1, 0], [1, 1]]).is_orthogonal()
    with pytest.raises(BasisError):
        BetaBasis.from_rows([[1, 2], [2, 4]])
    with pytest.raises(BasisError):
        BetaBasis.from_rows([[1, 0], [0, 1], [1, 1]])
    with pytest.raises(BasisError):
        BetaBasis.parse("1,0;1")


def test_canonical_basis_to_dict():
    payload = BetaBasis.canonical(2).to_dict()
    assert payload == {"rows": [[1.0, 0.0], [0.0, 1.0]], "m": 2, "n": 2}


def test_symbol_spec_checks_dimensions():
    g = create_action("elliptic", 2)
    SymbolSpec(g, BetaBasis.canonical(2), RatioProfile())
    with pytest.raises(BasisError):
        SymbolSpec(g, BetaBasis.canonical(3), RatioProfile())


def test_empty_search_results_are_falsy():
    assert not NotInSameFiber(mismatch=0.5, tol=1e-9)
    assert not WitnessNotFound(trials=10)
    assert NotInSameFiber(0.5, 1e-9).to_dict()["in_same_fiber"] is False


def test_verification_report_summary():
    report = VerificationReport(checks=[
        CheckResult("a", True, 1e-14, 1e-10),
        CheckResult("b", False, 1.0, 1e-10),
    ])
    assert not report.passed
    assert [c.name for c in report.failures] == ["b"]
    assert VerificationReport().passed
