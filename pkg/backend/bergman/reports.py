"""
Deterministic JSON reports.

Every report carries the resolved RunConfig, the library version and,
unless BERGMAN_RECORD_TIMING is off, wall-clock timing and a UTC
timestamp. Floats pass through 17 significant digits and complex
numbers become {"re": .., "im": ..}, so equal inputs give equal bytes.
"""

import json
import math
import time
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from .config import RunConfig, record_timing


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


def _float(x: float) -> Union[float, str]:
    if math.isnan(x) or math.isinf(x):
        return repr(x)
    return float(format(x, ".17g"))


def normalize(obj: Any) -> Any:
    """Convert results into JSON-ready builtins."""
    if callable(getattr(obj, "to_dict", None)):
        return normalize(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return normalize(obj.tolist())
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Path):
        return str(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _float(float(obj.real)), "im": _float(float(obj.imag))}
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    return obj


def build_report(
    config: RunConfig,
    result: Dict[str, Any],
    started: Optional[float] = None,
    passed: Optional[bool] = None,
) -> Dict[str, Any]:
    """
    Assemble the report envelope.

    Args:
        config: Resolved run configuration (embedded via model_dump)
        result: Command-specific payload
        started: time.perf_counter() at command start
        passed: Overall check status, if the command has one
    """
    from . import __version__

    report: Dict[str, Any] = {
        "command": config.command,
        "version": __version__,
        "config": config.model_dump(mode="json", by_alias=True),
        "result": result,
    }
    if passed is not None:
        report["passed"] = passed
    if record_timing():
        report["generated_at"] = _now_iso()
        if started is not None:
            report["timing"] = {"elapsed_s": time.perf_counter() - started}
    return normalize(report)


def write_json(report: Dict[str, Any], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(normalize(report), f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def load_json(path: Union[str, Path]) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)
