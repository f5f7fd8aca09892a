import sys
import unittest
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from backend.bergman.config import QuadratureConfig  # noqa: E402
from backend.bergman.verify import (  # noqa: E402
    check_elliptic_commutativity,
    check_fiber_witnesses,
    print_verification_report,
    roster,
    run_battery,
)

SMALL = QuadratureConfig(radial_n=12, angular_n=8, laguerre_n=24, hermite_n=16)


class InvariantBattery(unittest.TestCase):
    """The battery at a small sample size, clean and with the sign fault."""

    @classmethod
    def setUpClass(cls) -> None:
        cls.clean = run_battery(n=2, lam=0.0, seed=0, quad=SMALL, samples=4)
        cls.faulty = run_battery(n=2, lam=0.0, seed=0, fault="moment-sign", quad=SMALL, samples=4, trend_degrees=())

    def test_clean_run_passes(self) -> None:
        failed = [c.name for c in self.clean.failures]
        self.assertEqual(failed, [])
        self.assertTrue(self.clean.passed)

    def test_every_family_is_covered(self) -> None:
        names = {c.name for c in self.clean.checks}
        for label in ("E(2)", "P(2)", "H(2)", "N(2)", "N(3,1)"):
            self.assertIn(f"moment_property[{label}]", names)
            self.assertIn(f"fiber_transport[{label}]", names)
        self.assertIn("hyperbolic_identities", names)
        self.assertEqual(len(self.clean.checks), 35)
        self.assertEqual(len(self.faulty.checks), 31)

    def test_acceptance_checks_are_in_the_battery(self) -> None:
        names = {c.name for c in self.clean.checks}
        for name in ("independent_rules", "fiber_witness[E(2)]", "fiber_witness[P(3)]", "u_lambda_isometry[n=1]",
                     "u_lambda_isometry[n=2]", "elliptic_commutativity[n=2]"):
            self.assertIn(name, names)
        for label in ("P(2)", "H(2)", "N(2)", "N(3,1)"):
            self.assertIn(f"transported_trend[{label}]", names)
        self.assertFalse(any(c.name.startswith("transported_trend") for c in self.faulty.checks))

    def test_transported_trend_ends_below_tolerance(self) -> None:
        trends = [c for c in self.clean.checks if c.name.startswith("transported_trend")]
        for check in trends:
            self.assertTrue(check.passed, check.detail)
            self.assertLess(check.residual, 1e-3)
            self.assertIn("|p| <= 2", check.detail)

    def test_fault_fails_only_the_elliptic_moment_check(self) -> None:
        self.assertFalse(self.faulty.passed)
        self.assertEqual([c.name for c in self.faulty.failures], ["moment_property[E(2)]"])
        self.assertIn("fault injected", self.faulty.failures[0].detail)
        self.assertEqual(self.faulty.to_dict()["failed_checks"], 1)
        self.assertEqual(self.faulty.fault, "moment-sign")

    def test_report_prints(self) -> None:
        print_verification_report(self.faulty)


def test_roster_dimensions():
    assert [g.label for g in roster(1)] == ["E(1)", "P(2)", "H(2)", "N(2)", "N(3,1)"]
    assert [g.label for g in roster(4)] == ["E(4)", "P(4)", "H(4)", "N(4)", "N(4,1)"]


def test_progress_callback_sees_every_check():
    seen = []
    report = run_battery(n=1, seed=3, quad=SMALL, samples=2, progress=seen.append, trend_degrees=())
    assert len(seen) == len(report.checks)


def test_unknown_fault():
    with pytest.raises(ValueError, match="Unknown fault"):
        run_battery(fault="flip")


def test_fiber_witness_checks_report_the_moment_gap():
    results = check_fiber_witnesses()
    assert [r.name for r in results] == ["fiber_witness[E(2)]", "fiber_witness[P(3)]"]
    assert all(r.passed and r.residual < 1e-10 for r in results)
    assert all("discriminator gap" in r.detail for r in results)


def test_elliptic_commutativity_in_one_dimension():
    result = check_elliptic_commutativity(0.5, 1, degree=6)
    assert result.name == "elliptic_commutativity[n=1]"
    assert result.passed
