"""
Moment-map, Toeplitz and spectral computations from the command line.

Usage:
  python scripts/bergman_lab.py moment --action elliptic --n 2 --point "0.5,0"
  python scripts/bergman_lab.py toeplitz --action elliptic --n 2 --degree 8 --tol 1e-10
  python scripts/bergman_lab.py toeplitz --action elliptic --n 1 --pair re-im --degree 2 --buffer 0
  python scripts/bergman_lab.py toeplitz --action nilpotent --n 2 --profile ratio --trend 4,6,8 --tol 1e-3
  python scripts/bergman_lab.py spectrum --family parabolic --n 2 --cross-check
  python scripts/bergman_lab.py verify --seed 0

Exit codes: 0 pass, 1 check failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from backend.bergman.commands import COMMANDS  # noqa: E402
from backend.bergman.config import QuadratureConfig, RunConfig  # noqa: E402
from backend.bergman.profiles import parse_profile_args  # noqa: E402
from backend.bergman.verify import print_verification_report  # noqa: E402


def _floats(text: str) -> List[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'") from exc


def _ints(text: str) -> List[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from exc


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--lambda", dest="lam", type=float, default=0.0)
    parser.add_argument("--degree", type=int, default=4)
    parser.add_argument("--action", default="elliptic",
                        choices=["elliptic", "parabolic", "hyperbolic", "nilpotent", "quasinilpotent"])
    parser.add_argument("--k", type=int, default=None)
    parser.add_argument("--beta", default=None, help='rows "v1;v2;...", each comma-separated')
    parser.add_argument("--partition", default=None, help='"k1,k2,..."')
    parser.add_argument("--profile", default="reciprocal")
    parser.add_argument("--profile-args", default="", help="shape parameters, comma-separated")
    parser.add_argument("--profile-weights", default=None, help="combination weights, one per coordinate")
    parser.add_argument("--grid-xi", type=_floats, default=None)
    parser.add_argument("--grid-y", type=_floats, default=None)
    parser.add_argument("--quad-radial", type=int, default=None)
    parser.add_argument("--quad-angular", type=int, default=None)
    parser.add_argument("--quad-laguerre", type=int, default=None)
    parser.add_argument("--quad-hermite", type=int, default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="bergman_out")
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--log-level", default="WARNING")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Bergman-space moment maps, Toeplitz matrices and spectra.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    moment = sub.add_parser("moment")
    _common(moment)
    moment.add_argument("--point", action="append", default=[], help='coordinates "z1,z2,..." (repeatable)')
    moment.add_argument("--check-invariance", action="store_true")

    toeplitz = sub.add_parser("toeplitz")
    _common(toeplitz)
    toeplitz.add_argument("--buffer", type=int, default=2)
    toeplitz.add_argument("--pair", default="beta", choices=["beta", "re-im"])
    toeplitz.add_argument("--trend", type=_ints, default=[], help='degrees "4,6,8" for the commutator trend')

    spectrum = sub.add_parser("spectrum")
    _common(spectrum)
    spectrum.add_argument("--family", default="elliptic",
                          choices=["elliptic", "parabolic", "nilpotent", "quasinilpotent"])
    spectrum.add_argument("--representation", default="beta", choices=["beta", "moment", "abeta"])
    spectrum.add_argument("--cross-check", action="store_true")
    spectrum.add_argument("--p-max", type=int, default=2)

    verify = sub.add_parser("verify")
    _common(verify)
    verify.add_argument("--fault", default=None, choices=["moment-sign"])
    verify.add_argument("--samples", type=int, default=50)
    verify.add_argument("--trend", type=_ints, default=[4, 6, 8], help="degrees of the transported commutator trend")
    verify.add_argument("--no-trend", dest="trend", action="store_const", const=[], help="skip the transported trend")
    return parser


def _config_fields(args: argparse.Namespace) -> Dict[str, Any]:
    fields: Dict[str, Any] = {
        "command": args.cmd,
        "n": args.n,
        "lambda": args.lam,
        "degree": args.degree,
        "action": args.action,
        "k": args.k,
        "beta": args.beta,
        "partition": args.partition,
        "profile": args.profile,
        "profile_args": parse_profile_args(args.profile_args),
        "profile_weights": parse_profile_args(args.profile_weights) if args.profile_weights else None,
        "seed": args.seed,
        "out": args.out,
        "tol": args.tol,
    }
    if args.grid_xi is not None:
        fields["grid_xi"] = args.grid_xi
    if args.grid_y is not None:
        fields["grid_y"] = args.grid_y
    for name in ("point", "check_invariance", "buffer", "pair", "family", "representation",
                 "cross_check", "p_max", "fault", "samples", "trend"):
        if hasattr(args, name):
            fields["points" if name == "point" else name] = getattr(args, name)

    quad: Dict[str, int] = {}
    for flag, key in (("quad_radial", "radial_n"), ("quad_angular", "angular_n"),
                      ("quad_laguerre", "laguerre_n"), ("quad_hermite", "hermite_n")):
        value = getattr(args, flag)
        if value is not None:
            quad[key] = value
    fields["quad"] = QuadratureConfig(**quad)
    return fields


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        config = RunConfig(**_config_fields(args))
    except (ValidationError, ValueError) as exc:
        print(f"[ERROR] Invalid configuration: {exc}")
        return 2

    command = COMMANDS[config.command]
    try:
        result = command(config)
    except ValueError as exc:
        print(f"[ERROR] {exc}")
        return 2

    if config.command == "verify":
        print_verification_report(result.detail)
    for path in result.outputs:
        print(f"[OK] Written: {path}")
    if result.exit_code:
        print(f"[FAIL] {config.command} checks did not pass")
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
