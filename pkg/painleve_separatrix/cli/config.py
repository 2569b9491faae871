"""
Run Configuration Module

Builds the ``RunConfig`` for one CLI invocation from three layers, later
layers winning: built-in defaults, an optional flat ``key = value`` file
(``--config PATH``) and command-line flags.

The file has no sections; ``#`` and ``;`` start comments:

    # tighter integration for n = 11, 12
    rel_tol = 1e-13
    h_max = 0.05
    workers = 4

License: MIT
"""

from __future__ import annotations

import argparse
import configparser
import logging
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Callable, Optional

from painleve_separatrix.eigensolver import DEFAULT_TOL, SolverSettings
from painleve_separatrix.exceptions import PainleveConfigurationError
from painleve_separatrix.models import SUPPORTED_METHODS, EigenvalueKind, StepControl
from painleve_separatrix.solver import ClassifierSettings, NavigatorSettings

logger = logging.getLogger(__name__)

COMMANDS = ("eigen", "classify", "extrapolate", "wkb", "audit", "toy", "reproduce")
KINDS = ("slope", "value", "toy")
OUTPUT_FORMATS = ("csv", "json")
_SECTION = "run"


@dataclass
class RunConfig:
    """
    Everything one CLI run needs.

    Attributes:
        command: Sub-command to run
        kind: Eigenvalue family slug (slope, value or toy)
        n_max: Highest eigenvalue index
        tol: Bisection tolerance
        fixed_datum: Held initial datum; None uses the family default
        output_dir: Where artifacts are written
        output_format: csv or json
        workers: Worker processes for scans and sequences
        options: Command-specific flags (bracket, order, angle, ...)
    """

    command: str = "eigen"
    kind: str = "slope"
    n_max: int = 5
    tol: float = DEFAULT_TOL
    rel_tol: float = 1e-12
    abs_tol: float = 1e-12
    h_init: float = 1e-3
    h_min: float = 1e-12
    h_max: float = 0.1
    max_steps: int = 200_000
    method: str = "RK45"
    refine_method: str = "DOP853"
    refine_factor: float = 10.0
    horizon: float = 20.0
    window: float = 3.0
    tube_width: float = 0.5
    band_width: float = 1.5
    cascade_cap: int = 8
    pole_threshold: float = 1e3
    zero_threshold: float = 1e-2
    fixed_datum: Optional[float] = None
    scan_step: Optional[float] = None
    output_dir: Path = Path(".")
    output_format: str = "csv"
    workers: int = 1
    options: dict[str, Any] = field(default_factory=dict)

    def eigenvalue_kind(self) -> EigenvalueKind:
        if self.kind == "slope":
            return EigenvalueKind.slope(1.0 if self.fixed_datum is None else self.fixed_datum)
        if self.kind == "value":
            return EigenvalueKind.value(0.0 if self.fixed_datum is None else self.fixed_datum)
        return EigenvalueKind.toy()

    def solver_settings(self) -> SolverSettings:
        return SolverSettings(
            control=StepControl(
                rel_tol=self.rel_tol,
                abs_tol=self.abs_tol,
                h_init=self.h_init,
                h_min=self.h_min,
                h_max=self.h_max,
                max_steps=self.max_steps,
                method=self.method,
            ),
            navigator=NavigatorSettings(pole_threshold=self.pole_threshold, zero_threshold=self.zero_threshold),
            classifier=ClassifierSettings(
                horizon=self.horizon,
                tube_width=self.tube_width,
                window=self.window,
                band_width=self.band_width,
                cascade_cap=self.cascade_cap,
            ),
            workers=self.workers,
            scan_step=self.scan_step,
            refine_method=self.refine_method,
            refine_factor=self.refine_factor,
        )


def _optional_float(text: str) -> Optional[float]:
    return None if text.strip().lower() in ("", "none") else float(text)


_PARSERS: dict[str, Callable[[str], Any]] = {
    "kind": str,
    "n_max": int,
    "tol": float,
    "rel_tol": float,
    "abs_tol": float,
    "h_init": float,
    "h_min": float,
    "h_max": float,
    "max_steps": int,
    "method": str,
    "refine_method": str,
    "refine_factor": float,
    "horizon": float,
    "window": float,
    "tube_width": float,
    "band_width": float,
    "cascade_cap": int,
    "pole_threshold": float,
    "zero_threshold": float,
    "fixed_datum": _optional_float,
    "scan_step": _optional_float,
    "output_dir": Path,
    "output_format": str,
    "workers": int,
}

RECOGNIZED_KEYS = tuple(_PARSERS)


def load_config_file(path: Path) -> dict[str, Any]:
    """
    Read a flat ``key = value`` file.

    Raises:
        PainleveConfigurationError: Missing file, unknown key or unparsable
            value; details name the key and its line
    """
    if not path.exists():
        raise PainleveConfigurationError(
            f"Config file {path} does not exist",
            details={"parameter": "config", "value": str(path), "valid_range": "existing file"},
        )
    text = path.read_text(encoding="utf-8")
    parser = configparser.ConfigParser(comment_prefixes=("#", ";"), inline_comment_prefixes=("#", ";"))
    parser.optionxform = str  # type: ignore[assignment,method-assign]
    try:
        parser.read_string(f"[{_SECTION}]\n{text}", source=str(path))
    except configparser.Error as e:
        raise PainleveConfigurationError(
            f"Cannot parse config file {path}: {e}",
            details={"parameter": "config", "value": str(path), "valid_range": "key = value lines"},
        ) from e

    lines = {
        line.split("=", 1)[0].strip(): number
        for number, line in enumerate(text.splitlines(), start=1)
        if "=" in line and not line.lstrip().startswith(("#", ";"))
    }
    values: dict[str, Any] = {}
    for key, raw in parser.items(_SECTION):
        if key not in _PARSERS:
            raise PainleveConfigurationError(
                f"Unknown config key '{key}' ({path}, line {lines.get(key, '?')})",
                details={
                    "parameter": key,
                    "value": raw,
                    "valid_range": ", ".join(RECOGNIZED_KEYS),
                    "line": lines.get(key),
                },
            )
        try:
            values[key] = _PARSERS[key](raw)
        except ValueError as e:
            raise PainleveConfigurationError(
                f"Unparsable value for '{key}' ({path}, line {lines.get(key, '?')}): {raw!r}",
                details={"parameter": key, "value": raw, "valid_range": _PARSERS[key].__name__, "line": lines.get(key)},
            ) from e
    logger.debug(f"Loaded {len(values)} key(s) from {path}")
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, the optional config file and explicit flags."""
    config = RunConfig(command=args.command)
    config_path = getattr(args, "config", None)
    if config_path is not None:
        for key, value in load_config_file(Path(config_path)).items():
            setattr(config, key, value)

    names = {f.name for f in fields(RunConfig)} - {"command", "options"}
    for name in names:
        value = getattr(args, name, None)
        if value is not None:
            setattr(config, name, value)

    known = names | {"command", "config", "debug", "quiet", "log_file"}
    config.options = {k: v for k, v in vars(args).items() if k not in known}
    validate_config(config)
    return config


def validate_config(config: RunConfig) -> None:
    """
    Check a merged configuration.

    Raises:
        PainleveConfigurationError: With parameter, value and valid_range
    """
    rules: list[tuple[str, bool, str]] = [
        ("command", config.command in COMMANDS, " | ".join(COMMANDS)),
        ("kind", config.kind in KINDS, " | ".join(KINDS)),
        ("n_max", config.n_max >= 1, ">= 1"),
        ("workers", config.workers >= 1, ">= 1"),
        ("tol", config.tol > 0.0, "> 0"),
        ("output_format", config.output_format in OUTPUT_FORMATS, " | ".join(OUTPUT_FORMATS)),
        ("method", config.method in SUPPORTED_METHODS, " | ".join(SUPPORTED_METHODS)),
        ("refine_method", config.refine_method in SUPPORTED_METHODS, " | ".join(SUPPORTED_METHODS)),
        ("horizon", config.horizon > 0.0, "> 0"),
        ("cascade_cap", config.cascade_cap >= 1, ">= 1"),
    ]
    for parameter, ok, valid_range in rules:
        if not ok:
            raise PainleveConfigurationError(
                f"Invalid {parameter}",
                details={"parameter": parameter, "value": getattr(config, parameter), "valid_range": valid_range},
            )

    if config.output_dir.exists() and not config.output_dir.is_dir():
        raise PainleveConfigurationError(
            "output_dir is not a directory",
            details={"parameter": "output_dir", "value": str(config.output_dir), "valid_range": "writable directory"},
        )

    # remaining numeric checks live with the settings dataclasses
    config.solver_settings()
    if config.kind != "toy":
        config.eigenvalue_kind()
    logger.debug("Configuration validated successfully")


__all__ = ["COMMANDS", "KINDS", "RECOGNIZED_KEYS", "RunConfig", "build_config", "load_config_file", "validate_config"]
