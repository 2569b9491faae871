"""
Command Pipeline Module

One function per sub-command. Each takes the merged ``RunConfig``, does the
numerical work through the library and writes its artifacts; the result
lists the artifacts and a few summary lines for the stderr banner.

License: MIT
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

from scipy.special import gamma as reference_gamma

from painleve_separatrix.asymptotics import (
    analytic_B,
    analytic_C,
    energy_of,
    fit_constant,
    richardson,
    slope_from_energy,
    value_from_energy,
    wkb_energy,
)
from painleve_separatrix.audit import audit_ray
from painleve_separatrix.eigensolver import (
    TOY_CONSTANT,
    bisect,
    classify_value,
    solve_eigen,
    solve_sequence,
    toy_eigenvalues,
)
from painleve_separatrix.exceptions import (
    NeverTrackedError,
    PainleveEigenvalueError,
    PainleveReproductionError,
)
from painleve_separatrix.instrumentation import SolveInstrumentation
from painleve_separatrix.models import EigenvalueKind, EigenvalueRecord, EigenvalueTag, ExtrapolationResult, WkbParams
from painleve_separatrix.reference import (
    ANALYTIC_TOLERANCE,
    B_CONSTANT,
    C_CONSTANT,
    CONSTANT_TOLERANCE,
    ENERGY_RATIO_BAND,
    TOY_RELATIVE_TOLERANCE,
    eigenvalue_references,
)
from painleve_separatrix.solver import deviation_sign

from .config import RunConfig
from .formatters import (
    AUDIT_COLUMNS,
    EIGENVALUE_COLUMNS,
    EXTRAPOLATION_COLUMNS,
    audit_rows,
    eigenvalue_rows,
    emit_trace,
    extrapolation_rows,
    read_eigenvalues,
    write_table,
)

logger = logging.getLogger(__name__)

DEFAULT_ORDERS = {EigenvalueTag.INITIAL_SLOPE: 5, EigenvalueTag.INITIAL_VALUE: 4, EigenvalueTag.TOY_MODEL: 4}
REPRODUCE_COUNTS = {EigenvalueTag.INITIAL_SLOPE: 12, EigenvalueTag.INITIAL_VALUE: 15}
QUICK_COUNTS = {EigenvalueTag.INITIAL_SLOPE: 5, EigenvalueTag.INITIAL_VALUE: 4}
RESIDUE_TOLERANCE = 1e-3
AUDIT_LEVELS = (2, 4, 8, 12)
TOY_LEVELS = 10


@dataclass
class CommandResult:
    title: str
    lines: list[str] = field(default_factory=list)
    artifacts: list[Path] = field(default_factory=list)
    payload: dict[str, Any] = field(default_factory=dict)


def _value_slug(value: float) -> str:
    return repr(float(value)).replace("-", "m").replace(".", "p")


def analytic_constant(kind: EigenvalueKind) -> float:
    if kind.tag is EigenvalueTag.INITIAL_SLOPE:
        return analytic_B()
    if kind.tag is EigenvalueTag.INITIAL_VALUE:
        return analytic_C()
    return TOY_CONSTANT


def _solve_records(
    config: RunConfig, kind: EigenvalueKind, instrumentation: Optional[SolveInstrumentation]
) -> list[EigenvalueRecord]:
    settings = config.solver_settings()
    if kind.tag is EigenvalueTag.TOY_MODEL:
        records = toy_eigenvalues(config.n_max, config.tol, settings, instrumentation=instrumentation)
    else:
        records = solve_sequence(kind, config.n_max, config.tol, settings, instrumentation=instrumentation)
    if not records:
        raise PainleveEigenvalueError("No eigenvalue converged", details={"kind": kind.slug, "n_max": config.n_max})
    return records


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def run_eigen(config: RunConfig, instrumentation: Optional[SolveInstrumentation] = None) -> CommandResult:
    kind = config.eigenvalue_kind()
    settings = config.solver_settings()
    bracket = config.options.get("bracket")
    if bracket is not None:
        records = [bisect(kind, (bracket[0], bracket[1]), config.tol, settings, instrumentation=instrumentation)]
    else:
        records = _solve_records(config, kind, instrumentation)

    result = CommandResult(f"{kind.slug} eigenvalues")
    result.artifacts.append(
        write_table(
            config.output_dir / f"eigenvalues_{kind.slug}.csv",
            EIGENVALUE_COLUMNS,
            eigenvalue_rows(records),
            config.output_format,
        )
    )
    if config.options.get("traces"):
        for record in records:
            solve = solve_eigen(kind, record.value, settings.for_index(record.n))
            result.artifacts.extend(
                emit_trace(solve, config.output_dir / f"trace_{kind.slug}_n{record.n}.csv", config.output_format)
            )
    for record in records:
        flag = "  ⚠️ flagged" if record.flagged else ""
        result.lines.append(f"n={record.n:>2}: {record.value:.10f}  ({record.pole_count} poles){flag}")
    result.payload["eigenvalues"] = [{"n": r.n, "value": r.value, "pole_count": r.pole_count} for r in records]
    return result


def run_classify(config: RunConfig, instrumentation: Optional[SolveInstrumentation] = None) -> CommandResult:
    kind = config.eigenvalue_kind()
    value = float(config.options["value"])
    start = instrumentation.start_timer("solve") if instrumentation else 0.0
    classification, record = classify_value(kind, value, config.solver_settings())
    if instrumentation:
        instrumentation.record_solve(start, record)

    try:
        side = deviation_sign(record, settings=config.solver_settings().classifier).value
    except NeverTrackedError:
        side = "none"
    decided_at = classification.decided_at

    result = CommandResult(f"classification of {kind.slug} {value!r}")
    result.artifacts.extend(
        emit_trace(record, config.output_dir / f"trace_{kind.slug}_{_value_slug(value)}.csv", config.output_format)
    )
    result.artifacts.append(
        write_table(
            config.output_dir / f"classification_{kind.slug}.csv",
            ("value", "classification", "re_decided_at", "im_decided_at", "pole_count", "departure_side"),
            [(value, classification.kind.value, decided_at.real, decided_at.imag, classification.pole_count, side)],
            config.output_format,
        )
    )
    result.lines.append(f"{classification.kind.value} at t={decided_at:.6g} after {classification.pole_count} poles")
    result.lines.append(f"Departure side: {side}")
    result.payload["classification"] = classification.kind.value
    return result


def _extrapolation_table(
    records: list[EigenvalueRecord], exponent: float, order: int, power: float
) -> list[ExtrapolationResult]:
    seq = [r.value / r.n**exponent for r in records]
    indices = [r.n for r in records]
    return [richardson(seq, k, power, indices=indices) for k in range(order + 1)]


def run_extrapolate(config: RunConfig, instrumentation: Optional[SolveInstrumentation] = None) -> CommandResult:
    kind = config.eigenvalue_kind()
    source = config.options.get("input")
    if source is not None:
        records = [EigenvalueRecord(kind, n, value, width) for n, value, width in read_eigenvalues(Path(source))]
    else:
        records = _solve_records(config, kind, instrumentation)

    order = config.options.get("order")
    order = min(DEFAULT_ORDERS[kind.tag] if order is None else order, len(records) - 1)
    power = float(config.options.get("power") or 1.0)
    # bracket widths bound the input noise; files without widths fall back to --tol
    noise = max((r.bracket_width for r in records), default=0.0) or config.tol
    fitted = fit_constant(records, kind.exponent, order, power=power, noise=noise)
    table = _extrapolation_table(records, kind.exponent, order, fitted.power)
    analytic = analytic_constant(kind)

    result = CommandResult(f"{kind.slug} extrapolation")
    result.artifacts.append(
        write_table(
            config.output_dir / f"extrapolation_{kind.slug}.csv",
            EXTRAPOLATION_COLUMNS,
            extrapolation_rows(table),
            config.output_format,
        )
    )
    result.lines.append(f"Limit (order {fitted.order}, p={fitted.power:g}): {fitted.limit:.8f}")
    result.lines.append(f"Analytic:                 {analytic:.8f}  (difference {fitted.limit - analytic:.2e})")
    if "diagnosis" in fitted.metadata:
        result.lines.append(f"Diagnosis: {fitted.metadata['diagnosis']}")
    result.payload["extrapolation"] = {
        "limit": fitted.limit,
        "analytic": analytic,
        "noise": noise,
        "metadata": fitted.metadata,
    }
    return result


def run_wkb(config: RunConfig, instrumentation: Optional[SolveInstrumentation] = None) -> CommandResult:  # noqa: ARG001
    g = float(config.options.get("g", 0.125))
    epsilon = float(config.options.get("epsilon", 4.0))
    levels = config.options.get("levels") or list(range(1, 13))

    rows = []
    for n in levels:
        energy = wkb_energy(WkbParams(g, epsilon, n))
        rows.append((n, energy, slope_from_energy(energy), value_from_energy(energy)))

    result = CommandResult(f"WKB energies g={g:g} epsilon={epsilon:g}")
    result.artifacts.append(
        write_table(config.output_dir / "wkb.csv", ("n", "energy", "slope", "value"), rows, config.output_format)
    )
    for n, energy, slope, value in rows:
        result.lines.append(f"n={n:>3}: E={energy:.8f}  b={slope:.8f}  c={value:.8f}")
    return result


def run_audit(
    config: RunConfig, instrumentation: Optional[SolveInstrumentation] = None  # noqa: ARG001
) -> CommandResult:
    kind = config.eigenvalue_kind()
    levels = config.options.get("levels") or list(AUDIT_LEVELS)
    angle = float(config.options.get("angle", -math.pi / 4.0))
    x_max = float(config.options.get("x_max", 1.0))
    value = config.options.get("value")
    if value is not None and len(levels) != 1:
        raise PainleveEigenvalueError("--value needs exactly one index", details={"levels": levels})

    result = CommandResult(f"{kind.slug} energy audit, arg t = {angle:.4f}")
    ratios = []
    for n in levels:
        audit = audit_ray(n, kind, angle, x_max, value, settings=config.solver_settings(), tol=config.tol)
        result.artifacts.append(
            write_table(
                config.output_dir / f"audit_{kind.slug}_n{n}.csv",
                AUDIT_COLUMNS,
                audit_rows(audit),
                config.output_format,
            )
        )
        ratio = audit.samples[-1].ratio
        ratios.append(ratio)
        drift = audit.metadata.get("invariant_drift", 0.0)
        result.lines.append(f"n={n:>2}: |I|/|H0| at |x|={x_max:g} = {ratio:.6e}  (drift {drift:.1e})")
    if len(ratios) > 1:
        trend = all(b < a for a, b in zip(ratios, ratios[1:]))
        result.lines.append(f"Ratio decreasing in n: {trend}")
        result.payload["decreasing"] = trend
    result.payload["ratios"] = ratios
    return result


def run_toy(config: RunConfig, instrumentation: Optional[SolveInstrumentation] = None) -> CommandResult:
    kind = EigenvalueKind.toy()
    records = _solve_records(config, kind, instrumentation)
    result = CommandResult("toy model thresholds")
    result.artifacts.append(
        write_table(config.output_dir / "toy.csv", EIGENVALUE_COLUMNS, eigenvalue_rows(records), config.output_format)
    )
    for record in records:
        result.lines.append(f"a_{record.n}: {record.value:.10f}")
    if len(records) >= 2:
        fitted = fit_constant(records, 0.5, min(DEFAULT_ORDERS[kind.tag], len(records) - 1))
        result.lines.append(f"a_n/sqrt(n) -> {fitted.limit:.6f} (2^(5/6) = {TOY_CONSTANT:.6f})")
    return result


# ---------------------------------------------------------------------------
# Reproduction
# ---------------------------------------------------------------------------


@dataclass
class Check:
    name: str
    expected: float
    computed: float
    tolerance: float
    passed: bool


def _check(name: str, expected: float, computed: float, tolerance: float, relative: bool = False) -> Check:
    error = abs(computed - expected) / (abs(expected) if relative else 1.0)
    return Check(name, expected, computed, tolerance, bool(error <= tolerance))


def _reproduce_family(
    kind: EigenvalueKind, count: int, config: RunConfig, instrumentation: Optional[SolveInstrumentation]
) -> tuple[list[Check], list[EigenvalueRecord]]:
    records = solve_sequence(kind, count, config.tol, config.solver_settings(), instrumentation=instrumentation)
    by_index = {r.n: r for r in records}
    checks = []
    for reference in eigenvalue_references(kind):
        n = int(reference.name.rsplit("_", 1)[1])
        if n > count:
            continue
        computed = by_index[n].value if n in by_index else math.nan
        checks.append(Check(reference.name, reference.value, computed, reference.tolerance, reference.check(computed)))

    for record in records:
        expected = record.n // 2
        checks.append(
            Check(
                f"{kind.slug}_{record.n}_poles",
                float(expected),
                float(record.pole_count),
                0.0,
                record.pole_count == expected,
            )
        )
    worst = max((r.residual_diagnostics.get("residue_max_deviation", 0.0) for r in records), default=0.0)
    checks.append(Check(f"{kind.slug}_residues", 0.0, float(worst), RESIDUE_TOLERANCE, worst < RESIDUE_TOLERANCE))
    return checks, records


def run_reproduce(config: RunConfig, instrumentation: Optional[SolveInstrumentation] = None) -> CommandResult:
    quick = bool(config.options.get("quick"))
    counts = QUICK_COUNTS if quick else REPRODUCE_COUNTS
    checks = [
        _check("analytic_B", B_CONSTANT, analytic_B(), ANALYTIC_TOLERANCE),
        _check("analytic_C", C_CONSTANT, analytic_C(), ANALYTIC_TOLERANCE),
    ]
    kernel = math.sqrt(math.pi) * float(reference_gamma(5.0 / 3.0) / reference_gamma(7.0 / 6.0))
    for n in (1, 10, 100):
        exact = wkb_energy(WkbParams(0.125, 4.0, n))
        checks.append(_check(f"wkb_identity_{n}", (kernel * n) ** 1.5, exact, 1e-12, True))

    families: dict[EigenvalueTag, list[EigenvalueRecord]] = {}
    for kind in (EigenvalueKind.slope(), EigenvalueKind.value()):
        family_checks, records = _reproduce_family(kind, counts[kind.tag], config, instrumentation)
        checks.extend(family_checks)
        families[kind.tag] = records

    if not quick:
        slope = families[EigenvalueTag.INITIAL_SLOPE]
        value = families[EigenvalueTag.INITIAL_VALUE]
        checks.append(_check("B_extrapolated", B_CONSTANT, fit_constant(slope[:12], 0.75, 5).limit, CONSTANT_TOLERANCE))
        checks.append(_check("C_extrapolated", C_CONSTANT, fit_constant(value[:15], 0.5, 4).limit, CONSTANT_TOLERANCE))
        low, high = ENERGY_RATIO_BAND
        for records in (slope, value):
            ratios = [energy_of(r) / wkb_energy(WkbParams(0.125, 4.0, r.n)) for r in records if 4 <= r.n <= 12]
            if ratios:
                name = f"{records[0].kind.slug}_energy_ratio_12"
                checks.append(Check(name, 1.0, ratios[-1], high - 1.0, low <= ratios[-1] <= high))
                drift = [abs(r - 1.0) for r in ratios]
                monotone = all(b <= a for a, b in zip(drift, drift[1:]))
                checks.append(Check(f"{records[0].kind.slug}_energy_drift", 0.0, drift[-1], high - 1.0, monotone))

        audit_ratios = [
            audit_ray(n, EigenvalueKind.slope(), -math.pi / 4.0, 1.0, settings=config.solver_settings())
            .samples[-1]
            .ratio
            for n in AUDIT_LEVELS
        ]
        trend = all(b < a for a, b in zip(audit_ratios, audit_ratios[1:]))
        checks.append(Check("audit_trend", 1.0, 1.0 if trend else 0.0, 0.0, trend))

    toy_records = toy_eigenvalues(TOY_LEVELS, config.tol, config.solver_settings(), instrumentation=instrumentation)
    toy_limit = fit_constant(toy_records, 0.5, min(4, len(toy_records) - 1)).limit if len(toy_records) > 1 else math.nan
    checks.append(_check("toy_constant", TOY_CONSTANT, toy_limit, TOY_RELATIVE_TOLERANCE, True))

    result = CommandResult("reproduction summary" + (" (quick)" if quick else ""))
    result.artifacts.append(
        write_table(
            config.output_dir / "reproduce_summary.csv",
            ("check", "expected", "computed", "tolerance", "passed"),
            [(c.name, c.expected, c.computed, c.tolerance, c.passed) for c in checks],
            config.output_format,
        )
    )
    failed = [c.name for c in checks if not c.passed]
    result.lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    for name in failed:
        result.lines.append(f"  ❌ {name}")
    result.payload["failed"] = failed
    if failed:
        raise PainleveReproductionError(
            f"{len(failed)} check(s) disagree with the published values",
            details={"failed": failed, "summary": str(result.artifacts[-1])},
        )
    return result


COMMAND_HANDLERS: dict[str, Callable[[RunConfig, Optional[SolveInstrumentation]], CommandResult]] = {
    "eigen": run_eigen,
    "classify": run_classify,
    "extrapolate": run_extrapolate,
    "wkb": run_wkb,
    "audit": run_audit,
    "toy": run_toy,
    "reproduce": run_reproduce,
}


def run(config: RunConfig, instrumentation: Optional[SolveInstrumentation] = None) -> CommandResult:
    """Run the configured command and write its artifacts."""
    config.output_dir.mkdir(parents=True, exist_ok=True)
    logger.info(f"Running {config.command} ({config.kind}, n_max={config.n_max}, workers={config.workers})")
    return COMMAND_HANDLERS[config.command](config, instrumentation)


__all__ = ["COMMAND_HANDLERS", "CommandResult", "analytic_constant", "run"]
