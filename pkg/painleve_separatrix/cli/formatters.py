"""
Output Formatting Module

Writes the CLI artifacts (CSV tables, their JSON mirrors, solve traces with
their pole sidecars, the error report) and prints human-readable summaries
to stderr.

Floats are written with ``repr``, the shortest string that round-trips, and
rows always come out in a fixed order, so identical runs produce identical
files.

License: MIT
"""

from __future__ import annotations

import csv
import json
import logging
import sys
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from painleve_separatrix import __version__
from painleve_separatrix.exceptions import PainleveError
from painleve_separatrix.models import AuditRecord, EigenvalueRecord, ExtrapolationResult, SolveRecord

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ("re_t", "im_t", "re_y", "im_y", "re_yp", "im_yp", "arclength", "segment_index")
POLE_COLUMNS = ("re_t0", "im_t0", "re_residue", "im_residue", "detour_radius")
EIGENVALUE_COLUMNS = ("n", "value", "bracket_width", "pole_count", "flagged")
EXTRAPOLATION_COLUMNS = ("order", "limit", "stability_estimate", "power")
AUDIT_COLUMNS = ("re_x", "im_x", "re_H", "im_H", "re_I", "im_I", "ratio")


def format_value(value: Any) -> str:
    """Shortest round-trip text for floats, plain ``str`` for everything else."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    return value


def write_table(path: Path, columns: Sequence[str], rows: Iterable[Sequence[Any]], output_format: str = "csv") -> Path:
    """
    Write a table as CSV (LF line endings, header row) or as a JSON list of objects.

    ``path`` is given with a ``.csv`` suffix; JSON output swaps it for ``.json``.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = [list(row) for row in rows]
    if output_format == "json":
        target = path.with_suffix(".json")
        payload = [dict(zip(columns, (_json_value(v) for v in row))) for row in rows]
        target.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    else:
        target = path
        with target.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_value(v) for v in row])
    logger.debug(f"Wrote {len(rows)} row(s) to {target}")
    return target


def read_table(path: Path) -> list[dict[str, str]]:
    """Rows of a CSV artifact as dictionaries of strings."""
    with path.open("r", encoding="utf-8", newline="") as handle:
        return list(csv.DictReader(handle))


def emit_trace(record: SolveRecord, path: Path, output_format: str = "csv") -> tuple[Path, Path]:
    """
    Write the checkpoints of a solve and a ``.poles`` sidecar.

    Returns:
        (trace path, sidecar path)
    """
    trace_rows = [
        (cp.t.real, cp.t.imag, cp.y.real, cp.y.imag, cp.yp.real, cp.yp.imag, float(cp.arclength), cp.segment_index)
        for cp in record.checkpoints
    ]
    pole_rows = [
        (p.location.real, p.location.imag, p.residue.real, p.residue.imag, float(p.detour_radius))
        for p in record.poles
    ]
    trace = write_table(path, TRACE_COLUMNS, trace_rows, output_format)
    sidecar = write_table(path.with_name(path.stem + ".poles.csv"), POLE_COLUMNS, pole_rows, output_format)
    return trace, sidecar


def eigenvalue_rows(records: Sequence[EigenvalueRecord]) -> list[tuple[Any, ...]]:
    return [(r.n, float(r.value), float(r.bracket_width), r.pole_count, r.flagged) for r in records]


def extrapolation_rows(results: Sequence[ExtrapolationResult]) -> list[tuple[Any, ...]]:
    return [(r.order, float(r.limit), float(r.stability_estimate), float(r.power)) for r in results]


def audit_rows(audit: AuditRecord) -> list[tuple[Any, ...]]:
    return [
        (s.x.real, s.x.imag, complex(s.H).real, complex(s.H).imag, complex(s.I).real, complex(s.I).imag, float(s.ratio))
        for s in audit.samples
    ]


def read_eigenvalues(path: Path) -> list[tuple[int, float, float]]:
    """(n, value, bracket_width) from an eigenvalue CSV or JSON artifact; a missing width reads as 0."""
    if path.suffix == ".json":
        rows = json.loads(path.read_text(encoding="utf-8"))
    else:
        rows = read_table(path)
    return [(int(row["n"]), float(row["value"]), float(row.get("bracket_width") or 0.0)) for row in rows]


def write_error_report(
    output_dir: Path, error: BaseException, command: Optional[str], elapsed: float
) -> Optional[Path]:
    """Write ``error_report.json``; returns None when the directory is unusable."""
    details = error.details if isinstance(error, PainleveError) else {}
    report = {
        "error_type": type(error).__name__,
        "message": getattr(error, "message", str(error)),
        "details": _json_value(details),
        "command": command,
        "elapsed_seconds": round(elapsed, 3),
        "version": __version__,
    }
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        target = output_dir / "error_report.json"
        target.write_text(json.dumps(report, indent=2, default=str) + "\n", encoding="utf-8")
    except OSError as e:
        logger.error(f"Could not write error report: {e}")
        return None
    return target


def print_summary_to_stderr(title: str, lines: Sequence[str], artifacts: Sequence[Path] = ()) -> None:
    """Banner with one line per result and the artifacts written."""
    print("=" * 60, file=sys.stderr)
    print(title.upper(), file=sys.stderr)
    print("=" * 60, file=sys.stderr)
    for line in lines:
        print(line, file=sys.stderr)
    if artifacts:
        print("Artifacts:", file=sys.stderr)
        for artifact in artifacts:
            print(f"  {artifact}", file=sys.stderr)
    print("=" * 60, file=sys.stderr)


def print_performance_summary(summary: dict[str, Any]) -> None:
    session = summary.get("session_metrics", {})
    print(
        f"Operations: {session.get('total_operations', 0)}, "
        f"failed: {session.get('failed_operations', 0)}, "
        f"total time: {session.get('total_session_time', 0.0):.1f}s",
        file=sys.stderr,
    )
    for insight in summary.get("performance_insights", []):
        print(f"  {insight}", file=sys.stderr)


def print_error_suggestions(debug: bool = False) -> None:
    print("\nTroubleshooting suggestions:", file=sys.stderr)
    print("1. Tighten the integrator with --rel-tol/--abs-tol or lower --h-max", file=sys.stderr)
    print("2. Loosen --tol if the bracket stalls at the noise floor", file=sys.stderr)
    print("3. Raise --max-steps for long cascades", file=sys.stderr)
    if not debug:
        print("4. Run with --debug to trace poles, detours and bisection steps", file=sys.stderr)


__all__ = [
    "AUDIT_COLUMNS",
    "EIGENVALUE_COLUMNS",
    "EXTRAPOLATION_COLUMNS",
    "POLE_COLUMNS",
    "TRACE_COLUMNS",
    "emit_trace",
    "format_value",
    "print_summary_to_stderr",
    "read_eigenvalues",
    "read_table",
    "write_error_report",
    "write_table",
]
