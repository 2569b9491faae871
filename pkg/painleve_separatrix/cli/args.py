"""
Command Line Argument Parsing Module

Defines the sub-commands of the painleve-separatrix CLI and validates the
command-specific flags. Shared solver flags default to None so that values
from a ``--config`` file are only overridden by flags actually given.

License: MIT
"""

from __future__ import annotations

import argparse
import logging
import math
from pathlib import Path
from typing import Optional, Sequence

from painleve_separatrix.exceptions import PainleveConfigurationError

logger = logging.getLogger(__name__)


def index_list(text: str) -> list[int]:
    """Parse ``1..12``, ``2,4,8`` or ``7`` into a list of indices."""
    try:
        if ".." in text:
            first, last = text.split("..", 1)
            return list(range(int(first), int(last) + 1))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid index list: {text!r}") from e


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)

    run = common.add_argument_group("run options")
    run.add_argument("--config", type=Path, default=None, help="Flat key = value config file")
    run.add_argument("--output-dir", dest="output_dir", type=Path, default=None, help="Artifact directory (default: .)")
    run.add_argument(
        "--format", dest="output_format", choices=("csv", "json"), default=None, help="Artifact format (default: csv)"
    )
    run.add_argument("--workers", type=int, default=None, help="Worker processes for scans and sequences (default: 1)")
    run.add_argument("--debug", action="store_true", help="Enable debug logging output to stderr")
    run.add_argument("--quiet", action="store_true", help="Suppress the summary banner on stderr")
    run.add_argument("--log-file", dest="log_file", default=None, help="Also write the log to this file")
    run.add_argument("--instrument", action="store_true", help="Attach timing metrics to JSON output")

    integ = common.add_argument_group("integration")
    integ.add_argument(
        "--rel-tol", dest="rel_tol", type=float, default=None, help="Relative tolerance (default: 1e-12)"
    )
    integ.add_argument(
        "--abs-tol", dest="abs_tol", type=float, default=None, help="Absolute tolerance (default: 1e-12)"
    )
    integ.add_argument("--h-init", dest="h_init", type=float, default=None, help="Initial step (default: 1e-3)")
    integ.add_argument("--h-min", dest="h_min", type=float, default=None, help="Smallest step (default: 1e-12)")
    integ.add_argument("--h-max", dest="h_max", type=float, default=None, help="Largest step (default: 0.1)")
    integ.add_argument("--max-steps", dest="max_steps", type=int, default=None, help="Step budget per solve")
    integ.add_argument("--method", choices=("RK45", "DOP853"), default=None, help="Runge-Kutta pair (default: RK45)")
    integ.add_argument(
        "--refine-method",
        dest="refine_method",
        choices=("RK45", "DOP853"),
        default=None,
        help="Runge-Kutta pair once bisection follows the departure side (default: DOP853)",
    )
    integ.add_argument(
        "--refine-factor",
        dest="refine_factor",
        type=float,
        default=None,
        help="Tolerance reduction for departure-side solves (default: 10)",
    )
    integ.add_argument("--tol", type=float, default=None, help="Bisection tolerance (default: 1e-8)")

    cls = common.add_argument_group("classification")
    cls.add_argument("--horizon", type=float, default=None, help="Distance down the axis (default: 20)")
    cls.add_argument("--window", type=float, default=None, help="Decision window (default: 3)")
    cls.add_argument("--tube-width", dest="tube_width", type=float, default=None, help="Tube around -2t (default: 0.5)")
    cls.add_argument(
        "--band-width", dest="band_width", type=float, default=None, help="Band around -2t/3 (default: 1.5)"
    )
    cls.add_argument(
        "--cascade-cap", dest="cascade_cap", type=int, default=None, help="Poles meaning cascade (default: 8)"
    )
    cls.add_argument("--pole-threshold", dest="pole_threshold", type=float, default=None, help="|y| that flags a pole")
    cls.add_argument(
        "--zero-threshold", dest="zero_threshold", type=float, default=None, help="|y| that starts a bridge"
    )
    cls.add_argument("--scan-step", dest="scan_step", type=float, default=None, help="Bracket scan grid step")
    return common


def _add_kind(parser: argparse.ArgumentParser, choices: Sequence[str] = ("slope", "value")) -> None:
    parser.add_argument("--kind", choices=choices, default=None, help="Eigenvalue family (default: slope)")
    parser.add_argument(
        "--fixed-datum",
        dest="fixed_datum",
        type=float,
        default=None,
        help="Held initial datum: y(0) for slope (default 1), y'(0) for value (default 0)",
    )


def create_parser() -> argparse.ArgumentParser:
    """
    Create and configure the argument parser for the CLI.

    Returns:
        Configured ArgumentParser instance
    """
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="painleve-separatrix",
        description="Separatrix eigenvalues of the fourth Painlevé equation",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  painleve-separatrix eigen --kind slope --n-max 12
  painleve-separatrix eigen --kind value --bracket -2.1 -1.9
  painleve-separatrix classify --kind slope --value 5.18498704
  painleve-separatrix extrapolate --kind slope --n-max 12 --order 5
  painleve-separatrix wkb --g 0.125 --epsilon 4 --n 1..12
  painleve-separatrix audit --kind slope --n 2,4,8,12 --x-max 1
  painleve-separatrix toy --n-max 10
  painleve-separatrix reproduce --workers 4

Output:
  CSV (or JSON with --format json) artifacts in --output-dir; a short
  summary goes to stderr. Floats are written in shortest round-trip form.

Exit codes:
  0 success, 2 usage or configuration error, 3 numerical failure
  (error_report.json is written), 4 reproduction mismatch.
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    eigen = sub.add_parser("eigen", parents=[common], help="Solve eigenvalues b_n or c_n")
    _add_kind(eigen)
    eigen.add_argument("--n-max", dest="n_max", type=int, default=None, help="Highest index (default: 5)")
    eigen.add_argument("--bracket", nargs=2, type=float, metavar=("LO", "HI"), help="Bisect a single bracket")
    eigen.add_argument("--traces", action="store_true", help="Write a trace of every converged separatrix")

    classify = sub.add_parser("classify", parents=[common], help="Classify one trial value and write its trace")
    _add_kind(classify)
    classify.add_argument("--value", type=float, required=True, help="Trial slope b or value c")

    extrapolate = sub.add_parser("extrapolate", parents=[common], help="Richardson-extrapolate B, C or 2^(5/6)")
    _add_kind(extrapolate, ("slope", "value", "toy"))
    extrapolate.add_argument("--n-max", dest="n_max", type=int, default=None, help="Eigenvalues to use")
    extrapolate.add_argument("--order", type=int, default=None, help="Order (default: 5 slope, 4 otherwise)")
    extrapolate.add_argument("--power", type=float, default=1.0, help="Correction power p in 1/n^p (default: 1)")
    extrapolate.add_argument("--input", type=Path, default=None, help="Eigenvalue CSV from a previous run")

    wkb = sub.add_parser("wkb", parents=[common], help="WKB energies and predicted eigenvalues")
    wkb.add_argument("--g", type=float, default=0.125, help="Coupling (default: %(default)s)")
    wkb.add_argument("--epsilon", type=float, default=4.0, help="Deformation exponent (default: %(default)s)")
    wkb.add_argument("--n", dest="levels", type=index_list, default=index_list("1..12"), help="Levels, e.g. 1..12")

    audit = sub.add_parser("audit", parents=[common], help="Energy audit along a complex ray")
    _add_kind(audit)
    audit.add_argument("--n", dest="levels", type=index_list, default=index_list("2,4,8,12"), help="Indices to audit")
    audit.add_argument("--angle", type=float, default=-math.pi / 4.0, help="Ray angle in radians (default: -pi/4)")
    audit.add_argument("--x-max", dest="x_max", type=float, default=1.0, help="Ray length (default: %(default)s)")
    audit.add_argument("--value", type=float, default=None, help="Eigenvalue to audit instead of the published one")

    toy = sub.add_parser("toy", parents=[common], help="Thresholds of y' = cos(pi t y)")
    toy.add_argument("--n-max", dest="n_max", type=int, default=None, help="Highest index (default: 5)")

    reproduce = sub.add_parser("reproduce", parents=[common], help="Full pipeline against published values")
    reproduce.add_argument("--quick", action="store_true", help="Low indices and analytic checks only")

    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """
    Parse command line arguments.

    Raises:
        PainleveConfigurationError: If arguments are invalid
    """
    parser = create_parser()
    args = parser.parse_args(argv)
    if args.command == "toy":
        args.kind = "toy"
    logger.debug(f"Parsed arguments: {args}")
    validate_args(args)
    return args


def validate_args(args: argparse.Namespace) -> None:
    """
    Validate the command-specific arguments.

    Raises:
        PainleveConfigurationError: If arguments are invalid
    """
    bracket = getattr(args, "bracket", None)
    if bracket is not None and not bracket[0] < bracket[1]:
        raise PainleveConfigurationError(
            "Bracket must satisfy LO < HI",
            details={"parameter": "bracket", "value": bracket, "valid_range": "LO < HI"},
        )

    order = getattr(args, "order", None)
    if order is not None and order < 0:
        raise PainleveConfigurationError(
            "Order cannot be negative",
            details={"parameter": "order", "value": order, "valid_range": ">= 0"},
        )

    levels = getattr(args, "levels", None)
    if levels is not None and (not levels or min(levels) < 1):
        raise PainleveConfigurationError(
            "Indices must be at least 1",
            details={"parameter": "n", "value": levels, "valid_range": ">= 1"},
        )

    x_max = getattr(args, "x_max", None)
    if x_max is not None and x_max < 0.0:
        raise PainleveConfigurationError(
            "Ray length cannot be negative",
            details={"parameter": "x_max", "value": x_max, "valid_range": ">= 0"},
        )

    if getattr(args, "g", 1.0) <= 0.0:
        raise PainleveConfigurationError(
            "Coupling must be positive", details={"parameter": "g", "value": args.g, "valid_range": "> 0"}
        )
    if getattr(args, "epsilon", 0.0) < 0.0:
        raise PainleveConfigurationError(
            "Epsilon cannot be negative",
            details={"parameter": "epsilon", "value": args.epsilon, "valid_range": ">= 0"},
        )

    if args.workers is not None and args.workers > 1:
        logger.debug(f"Running with {args.workers} worker processes")
    logger.debug("Arguments validated successfully")


__all__ = ["create_parser", "index_list", "parse_args", "validate_args"]
