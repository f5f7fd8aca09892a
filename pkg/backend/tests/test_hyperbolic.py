import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[2]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from backend.bergman.domains import sample_points  # noqa: E402
from backend.bergman.models import DomainError, DomainKind, DomainSpec, Point  # noqa: E402
from backend.bergman.spectra import hyperbolic_coordinates, hyperbolic_identity_residuals  # noqa: E402


def test_known_angles():
    at_i = hyperbolic_coordinates(np.array([0.0, 1j]))
    assert at_i[0] == pytest.approx(0.0)
    assert at_i[1] == pytest.approx(np.pi / 2)
    assert hyperbolic_coordinates(np.array([0.0, 1 + 1j]))[1] == pytest.approx(np.pi / 4)


def test_accepts_points():
    p = Point([0.0, 1 + 1j], DomainSpec(DomainKind.SIEGEL, 2))
    assert hyperbolic_coordinates(p)[1] == pytest.approx(np.pi / 4)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_identities_hold_on_random_points(n):
    rng = np.random.default_rng(11)
    z = sample_points(DomainKind.SIEGEL, n, 1000, rng)
    residuals = hyperbolic_identity_residuals(z)
    assert residuals.points == 1000
    assert residuals.max_residual < 1e-12
    assert set(residuals.to_dict()) == {"cot_residual", "ratio_residual", "points"}


def test_radial_coordinates_stay_inside_unit_ball():
    rng = np.random.default_rng(5)
    f = hyperbolic_coordinates(sample_points(DomainKind.SIEGEL, 3, 200, rng))
    assert np.all(np.sum(f[:, :-1] ** 2, axis=1) < 1.0)
    assert np.all((f[:, -1] > 0.0) & (f[:, -1] < np.pi))


def test_rejects_points_outside_domain():
    with pytest.raises(DomainError):
        hyperbolic_coordinates(np.array([1.0, 0.5j]))
