import sys
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

ROOT = Path(__file__).resolve().parents[2]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from backend.bergman import __version__  # noqa: E402
from backend.bergman.config import QuadratureConfig, RunConfig, record_timing  # noqa: E402
from backend.bergman.models import BetaBasis  # noqa: E402
from backend.bergman.reports import build_report, load_json, normalize, write_json  # noqa: E402
from backend.bergman.spectra import SpectrumFamily  # noqa: E402


def test_normalize_builtins():
    payload = normalize({
        1: np.array([1.5, 2.0]),
        "z": 1 + 2j,
        "bad": float("nan"),
        "inf": np.inf,
        "flag": np.bool_(True),
        "count": np.int64(3),
        "family": SpectrumFamily.NILPOTENT,
        "path": Path("a/b"),
    })
    assert payload == {
        "1": [1.5, 2.0],
        "z": {"re": 1.0, "im": 2.0},
        "bad": "nan",
        "inf": "inf",
        "flag": True,
        "count": 3,
        "family": "nilpotent",
        "path": str(Path("a/b")),
    }


def test_normalize_uses_to_dict():
    assert normalize(BetaBasis.canonical(2).to_dict()) == normalize(BetaBasis.canonical(2))


def test_record_timing_switch(monkeypatch):
    monkeypatch.delenv("BERGMAN_RECORD_TIMING", raising=False)
    assert record_timing()
    for off in ("0", "false", "No", " off "):
        monkeypatch.setenv("BERGMAN_RECORD_TIMING", off)
        assert not record_timing()


def test_build_report_without_timing(monkeypatch):
    monkeypatch.setenv("BERGMAN_RECORD_TIMING", "0")
    config = RunConfig(command="moment", n=2, quad=QuadratureConfig(radial_n=4, angular_n=4))
    report = build_report(config, {"mu": [0.5 + 0j]}, started=0.0, passed=True)
    assert report["command"] == "moment"
    assert report["version"] == __version__
    assert report["passed"] is True
    assert report["config"]["lambda"] == 0.0
    assert report["result"]["mu"] == [{"re": 0.5, "im": 0.0}]
    assert "generated_at" not in report
    assert "timing" not in report


def test_build_report_with_timing(monkeypatch):
    monkeypatch.setenv("BERGMAN_RECORD_TIMING", "1")
    report = build_report(RunConfig(command="verify"), {}, started=0.0)
    assert "generated_at" in report
    assert report["timing"]["elapsed_s"] >= 0.0
    assert "passed" not in report


def test_write_and_load_json(tmp_path):
    path = write_json({"b": 1, "a": [1 + 1j]}, tmp_path / "nested" / "report.json")
    text = path.read_text(encoding="utf-8")
    assert text.endswith("}\n")
    assert text.index('"a"') < text.index('"b"')
    assert load_json(path) == {"a": [{"re": 1.0, "im": 1.0}], "b": 1}


def test_quadrature_config_from_environment(monkeypatch):
    monkeypatch.setenv("BERGMAN_QUAD_RADIAL", "12")
    monkeypatch.setenv("BERGMAN_QUAD_ANGULAR", "")
    quad = QuadratureConfig()
    assert quad.radial_n == 12
    assert quad.angular_n is None
    assert quad.ball_orders(3) == (12, 20)
    assert quad.spectral_radial == 12
    monkeypatch.setenv("BERGMAN_QUAD_HERMITE", "many")
    with pytest.raises(ValueError):
        QuadratureConfig()


def test_ball_orders_default_per_dimension(monkeypatch):
    monkeypatch.delenv("BERGMAN_QUAD_RADIAL", raising=False)
    monkeypatch.delenv("BERGMAN_QUAD_ANGULAR", raising=False)
    quad = QuadratureConfig()
    assert quad.ball_orders(1) == (48, 96)
    assert quad.ball_orders(2) == (32, 48)
    assert quad.ball_orders(3) == (10, 20)
    assert quad.ball_orders(5) == (5, 12)
    assert quad.spectral_radial == 40
    assert QuadratureConfig(angular_n=24).ball_orders(3) == (10, 24)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(angular_n=7),
        dict(radial_n=0),
        dict(chunk_size=10),
    ],
)
def test_quadrature_config_validation(kwargs):
    with pytest.raises(ValidationError):
        QuadratureConfig(**kwargs)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=0),
        dict(lam=-1.0),
        dict(profile="cubic"),
        dict(action="loxodromic"),
        dict(action="quasinilpotent", n=3),
        dict(family="quasinilpotent", n=4, k=3),
        dict(degree=1, buffer=2),
        dict(beta="1,0,0"),
        dict(partition="2,x"),
        dict(pair="xy"),
        dict(grid_xi=[1.0, -0.5]),
        dict(representation="fourier"),
        dict(fault="flip"),
        dict(degree=8, buffer=2, trend=[1, 4]),
    ],
)
def test_run_config_validation(kwargs):
    with pytest.raises(ValidationError):
        RunConfig(command="moment", **kwargs)


def test_run_config_resolves_objects():
    config = RunConfig(command="moment", n=3, action="parabolic", partition="2,1", profile="Sigmoid",
                       profile_weights=[1.0, 0.0], profile_args=[0.5, 2.0])
    assert config.profile == "sigmoid"
    assert config.action_obj().label == "P(3)"
    assert np.allclose(config.beta_basis().matrix, [[1, 1, 0], [0, 0, 1]])
    assert np.allclose(config.beta_basis("elliptic").matrix, [[1, 1, 0], [0, 0, 1]])
    profile = config.profile_obj(2)
    assert profile.center == 0.5
    assert np.allclose(profile.weights, [1.0, 0.0])
    with pytest.raises(ValueError, match="2 entries"):
        config.profile_obj(3)
    with pytest.raises(ValueError):
        config.beta_basis("hyperbolic")
    explicit = RunConfig(command="moment", n=2, beta="1,1")
    assert np.allclose(explicit.beta_basis().matrix, [[1, 1]])
    assert RunConfig(command="moment", **{"lambda": 0.5}).lam == 0.5
