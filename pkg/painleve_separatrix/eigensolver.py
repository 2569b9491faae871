"""
Separatrix eigenvalues.

Three eigenvalue problems are solved here:

* ``InitialSlope``: hold y(0) and vary b = y'(0); separatrices b_n.
* ``InitialValue``: hold y'(0) and vary c = y(0); separatrices c_n.
* ``ToyModel``: y' = cos(π t y), y(0) = a; thresholds a_n where the number of
  maxima of y on the real line jumps from n to n + 1.

For the two P-IV problems every trial value is integrated from its own
initial data down the negative real axis, where the separatrices of both
families approach y = −2t. A negative y(0) passes a pole before it can turn
positive. Generic solutions there either cascade through poles or oscillate
about −2t/3; eigenvalues sit where the behaviour flips.

Bisection first compares classifications. Once both bracket ends track
y = −2t well past the start, it switches to the side on which each end
leaves the tube around −2t; those solves stop as soon as the side is known.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .asymptotics import analytic_B, analytic_C
from .exceptions import (
    DiscriminantAgreementError,
    PainleveConfigurationError,
    PainleveDomainError,
    PainleveEigenvalueError,
    PainleveIntegrationError,
    ToleranceUnreachableError,
)
from .instrumentation import SolveInstrumentation
from .models import (
    SUPPORTED_METHODS,
    Classification,
    DepartureSide,
    EigenvalueKind,
    EigenvalueRecord,
    EigenvalueTag,
    PainleveState,
    SolveRecord,
    StepControl,
)
from .ode import toy_system
from .solver.classifier import (
    BehaviourTracker,
    ClassifierSettings,
    DepartureTracker,
    TrackingStretch,
    classify,
    count_poles,
    tracking_stretch,
)
from .solver.navigator import NavigatorSettings, SolveMonitor, solve_ray

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
DEFAULT_SCAN_STEPS = {
    EigenvalueTag.INITIAL_SLOPE: 0.25,
    EigenvalueTag.INITIAL_VALUE: 0.1,
    EigenvalueTag.TOY_MODEL: 0.05,
}
TOY_CONSTANT = 2.0 ** (5.0 / 6.0)
# scipy clamps rtol below 100 eps
MIN_TOLERANCE = 3e-14
SCAN_EXTENSIONS = 4


@dataclass(frozen=True)
class SolverSettings:
    """
    Everything a solve needs besides the initial data.

    Attributes:
        control: Integrator tolerances and step limits
        navigator: Pole and zero thresholds, detour geometry
        classifier: Horizon, tube, window and cascade cap
        workers: Worker processes for scans and sequences (1 = serial)
        scan_step: Grid step for bracket scans; None uses the per-kind default
        refine_method: Runge-Kutta pair for departure-stage solves
        refine_factor: Tolerance reduction for departure-stage solves at n <= 4;
                       grows linearly with n beyond that
    """

    control: StepControl = field(default_factory=StepControl)
    navigator: NavigatorSettings = field(default_factory=NavigatorSettings)
    classifier: ClassifierSettings = field(default_factory=ClassifierSettings)
    workers: int = 1
    scan_step: Optional[float] = None
    refine_method: str = "DOP853"
    refine_factor: float = 10.0

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise PainleveConfigurationError(
                "workers must be at least 1",
                details={"parameter": "workers", "value": self.workers, "valid_range": ">= 1"},
            )
        if self.scan_step is not None and not self.scan_step > 0.0:
            raise PainleveConfigurationError(
                "scan_step must be positive",
                details={"parameter": "scan_step", "value": self.scan_step, "valid_range": "> 0"},
            )
        if self.refine_method not in SUPPORTED_METHODS:
            raise PainleveConfigurationError(
                f"Unknown integration method {self.refine_method!r}",
                details={
                    "parameter": "refine_method",
                    "value": self.refine_method,
                    "valid_range": list(SUPPORTED_METHODS),
                },
            )
        if not self.refine_factor >= 1.0:
            raise PainleveConfigurationError(
                "refine_factor must be at least 1",
                details={"parameter": "refine_factor", "value": self.refine_factor, "valid_range": ">= 1"},
            )

    def for_index(self, n: int) -> SolverSettings:
        """Raise the cascade cap by ⌊n/2⌋, the number of pole pairs the n-th separatrix passes first."""
        cap = self.classifier.cascade_cap + n // 2
        return replace(self, classifier=replace(self.classifier, cascade_cap=cap))

    def step_for(self, kind: EigenvalueKind) -> float:
        return self.scan_step if self.scan_step is not None else DEFAULT_SCAN_STEPS[kind.tag]

    def refined(self, n: int) -> SolverSettings:
        """
        Departure-stage settings for the n-th eigenvalue.

        Uses ``refine_method`` with both tolerances divided by
        ``refine_factor * max(1, n/4)``, floored at ``MIN_TOLERANCE``.
        """
        factor = self.refine_factor * max(1.0, n / 4.0)
        control = replace(
            self.control,
            rel_tol=max(self.control.rel_tol / factor, MIN_TOLERANCE),
            abs_tol=max(self.control.abs_tol / factor, MIN_TOLERANCE),
            method=self.refine_method,
        )
        return replace(self, control=control)


# ---------------------------------------------------------------------------
# Single solves
# ---------------------------------------------------------------------------


def initial_state(kind: EigenvalueKind, value: float) -> PainleveState:
    """State at t = 0 for a trial value."""
    if not kind.is_painleve:
        raise PainleveDomainError("The toy model has no P-IV initial state", details={"kind": kind.tag.value})
    y0, yp0 = kind.initial_data(value)
    if y0 == 0.0:
        raise PainleveDomainError("y(0) must be non-zero", details={"kind": kind.tag.value, "value": value})
    return PainleveState(0j, complex(y0), complex(yp0))


def solve_eigen(
    kind: EigenvalueKind,
    value: float,
    settings: Optional[SolverSettings] = None,
    monitor: Optional[SolveMonitor] = None,
) -> SolveRecord:
    """Integrate the trial solution down to the classification horizon."""
    settings = settings or SolverSettings()
    record = solve_ray(
        initial_state(kind, value),
        settings.classifier.horizon,
        settings.control,
        settings.navigator,
        direction=-1.0,
        monitor=monitor,
    )
    record.metadata.update({"kind": kind.tag.value, "fixed_datum": kind.fixed_datum, "value": value})
    return record


def classify_value(
    kind: EigenvalueKind,
    value: float,
    settings: Optional[SolverSettings] = None,
) -> tuple[Classification, SolveRecord]:
    """Solve with early stopping and classify the result."""
    settings = settings or SolverSettings()
    record = solve_eigen(kind, value, settings, BehaviourTracker(settings.classifier))
    return classify(record, settings.classifier), record


def estimate_index(kind: EigenvalueKind, value: float) -> int:
    """Index from the leading large-n law, n ≈ ⌈(|value|/|K|)^{1/exponent}⌉."""
    if kind.tag is EigenvalueTag.INITIAL_SLOPE:
        constant = analytic_B()
    elif kind.tag is EigenvalueTag.INITIAL_VALUE:
        constant = analytic_C()
    else:
        constant = TOY_CONSTANT
    return max(1, math.ceil((abs(value) / abs(constant)) ** (1.0 / kind.exponent)))


# ---------------------------------------------------------------------------
# Bisection
# ---------------------------------------------------------------------------


class Stage(str, Enum):
    CLASSIFY = "classify"
    DEPARTURE = "departure"


@dataclass
class Trial:
    value: float
    record: SolveRecord
    classification: Optional[Classification]
    stretch: Optional[TrackingStretch]

    @property
    def side(self) -> Optional[DepartureSide]:
        if self.stretch is None or self.stretch.side is DepartureSide.STILL_TRACKING:
            return None
        return self.stretch.side


def _solve_trial(kind: EigenvalueKind, value: float, settings: SolverSettings, stage: Stage) -> Trial:
    monitor: SolveMonitor
    if stage is Stage.DEPARTURE:
        monitor = DepartureTracker(settings.classifier, stop_on_departure=True)
    else:
        monitor = BehaviourTracker(settings.classifier)
    record = solve_eigen(kind, value, settings, monitor)
    classification = classify(record, settings.classifier) if stage is Stage.CLASSIFY else None
    stretch = tracking_stretch(record, settings.classifier)
    if stretch is not None and stretch.length < settings.classifier.min_tracking:
        stretch = None
    return Trial(value, record, classification, stretch)


def _departure_ready(lo: Trial, hi: Trial, settings: ClassifierSettings) -> bool:
    if lo.side is None or hi.side is None or lo.side is hi.side:
        return False
    assert lo.stretch is not None and hi.stretch is not None
    return lo.stretch.end >= settings.tracking_onset and hi.stretch.end >= settings.tracking_onset


def _noise_floor(value: float, control: StepControl) -> float:
    return max(64.0 * np.finfo(float).eps * max(1.0, abs(value)), 10.0 * control.rel_tol * max(1.0, abs(value)))


def bisect(
    kind: EigenvalueKind,
    bracket: tuple[float, float],
    tol: float = DEFAULT_TOL,
    settings: Optional[SolverSettings] = None,
    *,
    n: Optional[int] = None,
    instrumentation: Optional[SolveInstrumentation] = None,
) -> EigenvalueRecord:
    """
    Bisect a bracket down to width ``tol``.

    Args:
        kind: Eigenvalue problem
        bracket: Two trial values whose discriminants differ
        tol: Required final bracket width
        settings: Solver settings; the cascade cap is raised for index ``n``
        n: Index of the eigenvalue; estimated from the large-n law when None
        instrumentation: Records the bisection timing when given

    Raises:
        DiscriminantAgreementError: The bracket ends agree
        ToleranceUnreachableError: Noise stopped the bisection early; carries
            the best record, flagged
    """
    if not tol > 0.0:
        raise PainleveConfigurationError(
            "tol must be positive", details={"parameter": "tol", "value": tol, "valid_range": "> 0"}
        )
    settings = settings or SolverSettings()
    start = instrumentation.start_timer("bisect") if instrumentation else 0.0
    try:
        if kind.tag is EigenvalueTag.TOY_MODEL:
            record = _bisect_toy(bracket, tol, n)
        else:
            record = _bisect_painleve(kind, bracket, tol, settings, n)
    except Exception as e:
        if instrumentation:
            instrumentation.record_timing("bisect", start, success=False, error_type=type(e).__name__)
        raise
    if instrumentation:
        instrumentation.record_timing(
            "bisect",
            start,
            success=True,
            step_count=int(record.residual_diagnostics.get("steps", 0)),
            pole_count=record.pole_count,
        )
    return record


def _bisect_painleve(
    kind: EigenvalueKind,
    bracket: tuple[float, float],
    tol: float,
    base: SolverSettings,
    n: Optional[int],
) -> EigenvalueRecord:
    lo, hi = sorted((float(bracket[0]), float(bracket[1])))
    index = n if n is not None else estimate_index(kind, 0.5 * (lo + hi))
    settings = base.for_index(index)
    refined = settings.refined(index)

    trial_lo = _solve_trial(kind, lo, settings, Stage.CLASSIFY)
    trial_hi = _solve_trial(kind, hi, settings, Stage.CLASSIFY)
    assert trial_lo.classification is not None and trial_hi.classification is not None
    kind_lo, kind_hi = trial_lo.classification.kind, trial_hi.classification.kind
    if not (trial_lo.classification.is_generic and trial_hi.classification.is_generic) or kind_lo is kind_hi:
        raise DiscriminantAgreementError(
            "Bracket ends do not have opposite classifications",
            details={"bracket": (lo, hi), "lo": kind_lo.value, "hi": kind_hi.value},
        )

    stage = Stage.CLASSIFY
    switched_at: Optional[int] = None
    iterations = 0
    solves = 2
    steps = trial_lo.record.step_count + trial_hi.record.step_count
    floor = _noise_floor(0.5 * (lo + hi), refined.control)

    while hi - lo > tol:
        if stage is Stage.CLASSIFY and _departure_ready(trial_lo, trial_hi, settings.classifier):
            stage = Stage.DEPARTURE
            switched_at = iterations
            logger.debug(f"Switching to departure discriminant at width {hi - lo:.3e}")

        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi) or hi - lo <= floor:
            best = _build_record(
                kind, index, lo, hi, trial_lo, trial_hi, settings, iterations, switched_at, solves, steps
            )
            best.residual_diagnostics["tolerance_unreachable"] = True
            raise ToleranceUnreachableError(
                "Bracket reached the integration noise floor before the tolerance",
                record=best,
                details={"width": hi - lo, "tol": tol, "noise_floor": floor},
            )

        trial = _solve_trial(kind, mid, refined if stage is Stage.DEPARTURE else settings, stage)
        solves += 1
        steps += trial.record.step_count
        side = _which_side(trial, trial_lo, trial_hi, stage, kind_lo, kind_hi)
        if side is None and stage is Stage.DEPARTURE:
            trial = _solve_trial(kind, mid, settings, Stage.CLASSIFY)
            solves += 1
            steps += trial.record.step_count
            side = _which_side(trial, trial_lo, trial_hi, Stage.CLASSIFY, kind_lo, kind_hi)
        if side is None:
            best = _build_record(
                kind, index, lo, hi, trial_lo, trial_hi, settings, iterations, switched_at, solves, steps
            )
            best.residual_diagnostics["tolerance_unreachable"] = True
            raise ToleranceUnreachableError(
                "Midpoint discriminant is ambiguous",
                record=best,
                details={"mid": mid, "width": hi - lo, "stage": stage.value},
            )

        if side == "lo":
            lo, trial_lo = mid, trial
        else:
            hi, trial_hi = mid, trial
        iterations += 1
        logger.debug(f"bisect {kind.slug} n={index} it={iterations} [{lo:.12f}, {hi:.12f}] ({stage.value})")

    record = _build_record(kind, index, lo, hi, trial_lo, trial_hi, settings, iterations, switched_at, solves, steps)
    record.residual_diagnostics["departure_rel_tol"] = refined.control.rel_tol
    logger.info(
        f"🎯 {kind.slug} n={index}: {record.value:.10f} (width {record.bracket_width:.1e}, {record.pole_count} poles)"
    )
    return record


def _which_side(
    trial: Trial,
    trial_lo: Trial,
    trial_hi: Trial,
    stage: Stage,
    kind_lo: Any,
    kind_hi: Any,
) -> Optional[str]:
    if stage is Stage.DEPARTURE:
        if trial.side is None:
            return None
        return "lo" if trial.side is trial_lo.side else "hi"
    if trial.classification is None or not trial.classification.is_generic:
        return None
    if trial.classification.kind is kind_lo:
        return "lo"
    if trial.classification.kind is kind_hi:
        return "hi"
    return None


def _build_record(
    kind: EigenvalueKind,
    index: int,
    lo: float,
    hi: float,
    trial_lo: Trial,
    trial_hi: Trial,
    settings: SolverSettings,
    iterations: int,
    switched_at: Optional[int],
    solves: int,
    steps: int,
) -> EigenvalueRecord:
    def tracked(trial: Trial) -> float:
        return trial.stretch.end if trial.stretch is not None else 0.0

    best = trial_lo if tracked(trial_lo) >= tracked(trial_hi) else trial_hi
    pole_count = count_poles(best.record, settings.classifier)
    deviations = [p.residue_deviation for p in best.record.poles]
    diagnostics: dict[str, Any] = {
        "iterations": iterations,
        "stage_switch": switched_at,
        "solves": solves,
        "steps": steps,
        "tracking_end": tracked(best),
        "expected_pole_count": index // 2,
        "residue_max_deviation": max(deviations) if deviations else 0.0,
        "bracket": [lo, hi],
    }
    return EigenvalueRecord(kind, index, 0.5 * (lo + hi), hi - lo, pole_count, diagnostics)


# ---------------------------------------------------------------------------
# Scans and sequences
# ---------------------------------------------------------------------------


def _run_jobs(
    function: Callable[..., Any], jobs: Sequence[tuple[Any, ...]], workers: int
) -> list[tuple[Any, Optional[Exception]]]:
    """Run jobs serially or in a process pool; results come back in job order."""
    outcomes: list[tuple[Any, Optional[Exception]]] = []
    if workers <= 1 or len(jobs) <= 1:
        for job in jobs:
            try:
                outcomes.append((function(*job), None))
            except (PainleveEigenvalueError, PainleveIntegrationError) as e:
                outcomes.append((None, e))
        return outcomes

    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(function, *job) for job in jobs]
        for future in futures:
            try:
                outcomes.append((future.result(), None))
            except (PainleveEigenvalueError, PainleveIntegrationError) as e:
                outcomes.append((None, e))
    return outcomes


def _discriminant_job(kind: EigenvalueKind, value: float, settings: SolverSettings, horizon: float) -> Any:
    if kind.tag is EigenvalueTag.TOY_MODEL:
        return count_maxima(value, horizon)
    classification, _ = classify_value(kind, value, settings)
    return classification.kind.value if classification.is_generic else None


def _valid_trial(kind: EigenvalueKind, value: float) -> bool:
    if kind.tag is EigenvalueTag.INITIAL_VALUE:
        return abs(value) > 1e-12
    return True


def _grid(lo: float, hi: float, step: float) -> list[float]:
    count = int(math.floor((hi - lo) / step + 1e-9))
    return [lo + k * step for k in range(count + 1)]


def scan_brackets(
    kind: EigenvalueKind,
    lo: float,
    hi: float,
    step: float,
    settings: Optional[SolverSettings] = None,
    *,
    instrumentation: Optional[SolveInstrumentation] = None,
) -> list[tuple[float, float]]:
    """
    Adjacent grid pairs on which the discriminant differs.

    The discriminant is the classification for the P-IV problems and the
    number of maxima for the toy model. Grid points whose discriminant is
    undecided are skipped.
    """
    if lo > hi:
        raise PainleveConfigurationError(
            "Scan range is reversed", details={"parameter": "lo/hi", "value": (lo, hi), "valid_range": "lo <= hi"}
        )
    if not step > 0.0:
        raise PainleveConfigurationError(
            "Scan step must be positive", details={"parameter": "step", "value": step, "valid_range": "> 0"}
        )
    if lo == hi:
        return []
    settings = settings or SolverSettings()
    start = instrumentation.start_timer("scan") if instrumentation else 0.0

    grid = [v for v in _grid(lo, hi, step) if _valid_trial(kind, v)]
    horizon = _toy_horizon(max(abs(lo), abs(hi)))
    outcomes = _run_jobs(_discriminant_job, [(kind, v, settings, horizon) for v in grid], settings.workers)

    points = []
    for value, (verdict, error) in zip(grid, outcomes):
        if error is not None:
            logger.warning(f"⚠️ Scan point {value} failed: {error}")
            continue
        if verdict is not None:
            points.append((value, verdict))

    brackets = [(a, b) for (a, va), (b, vb) in zip(points, points[1:]) if va != vb]
    if instrumentation:
        instrumentation.record_timing("scan", start, success=True)
    logger.debug(f"Scan {kind.slug} [{lo}, {hi}] step {step}: {len(brackets)} bracket(s)")
    return brackets


def _scan_range(kind: EigenvalueKind, n_max: int, scale: float) -> tuple[float, float]:
    if kind.tag is EigenvalueTag.INITIAL_SLOPE:
        return 0.0, scale * (analytic_B() * (n_max + 0.5) ** 0.75 * 1.1 + 1.0)
    return -scale * (abs(analytic_C()) * math.sqrt(n_max + 0.5) * 1.1 + 0.5), 0.0


def solve_sequence(
    kind: EigenvalueKind,
    n_max: int,
    tol: float = DEFAULT_TOL,
    settings: Optional[SolverSettings] = None,
    *,
    instrumentation: Optional[SolveInstrumentation] = None,
) -> list[EigenvalueRecord]:
    """
    Eigenvalues n = 1..n_max, ordered by |value|.

    Brackets come from a scan sized by the large-n law and widened when it
    falls short. Each bracket is bisected independently, in parallel when
    ``settings.workers > 1``; results are assembled in index order. Indices
    whose bisection fails are logged and left out; tolerance failures keep
    their flagged best record.
    """
    if n_max < 1:
        raise PainleveConfigurationError(
            "n_max must be at least 1", details={"parameter": "n_max", "value": n_max, "valid_range": ">= 1"}
        )
    settings = settings or SolverSettings()
    if kind.tag is EigenvalueTag.TOY_MODEL:
        return toy_eigenvalues(n_max, tol, settings, instrumentation=instrumentation)

    step = settings.step_for(kind)
    brackets: list[tuple[float, float]] = []
    scale = 1.0
    for _ in range(SCAN_EXTENSIONS):
        lo, hi = _scan_range(kind, n_max, scale)
        brackets = scan_brackets(kind, lo, hi, step, settings.for_index(n_max), instrumentation=instrumentation)
        brackets.sort(key=lambda b: abs(0.5 * (b[0] + b[1])))
        if len(brackets) >= n_max:
            break
        scale *= 1.25
        logger.debug(f"Only {len(brackets)} bracket(s) found; widening scan to x{scale:.2f}")
    else:
        logger.warning(f"⚠️ Found {len(brackets)} of {n_max} {kind.slug} brackets")

    jobs = [(kind, bracket, tol, settings, n) for n, bracket in enumerate(brackets[:n_max], start=1)]
    start = instrumentation.start_timer("sequence") if instrumentation else 0.0
    outcomes = _run_jobs(_bisect_job, jobs, settings.workers)

    records: list[EigenvalueRecord] = []
    for (_, bracket, _, _, n), (record, error) in zip(jobs, outcomes):
        if isinstance(error, ToleranceUnreachableError) and error.record is not None:
            logger.warning(f"⚠️ {kind.slug} n={n}: {error.message}; keeping flagged record")
            records.append(error.record)
        elif error is not None:
            logger.error(f"{kind.slug} n={n} in {bracket} failed: {error}")
        else:
            records.append(record)

    _check_sequence(kind, records)
    if instrumentation:
        instrumentation.record_timing("sequence", start, success=len(records) == n_max)
    return records


def _bisect_job(
    kind: EigenvalueKind, bracket: tuple[float, float], tol: float, settings: SolverSettings, n: int
) -> EigenvalueRecord:
    return bisect(kind, bracket, tol, settings, n=n)


def _check_sequence(kind: EigenvalueKind, records: list[EigenvalueRecord]) -> None:
    """Flag monotonicity and pole-count violations in the record diagnostics."""
    sign = -1.0 if kind.tag is EigenvalueTag.INITIAL_VALUE else 1.0
    for previous, current in zip(records, records[1:]):
        if not sign * current.value > sign * previous.value:
            current.residual_diagnostics["monotone"] = False
            logger.warning(f"⚠️ {kind.slug} n={current.n} breaks monotonicity")
    if not kind.is_painleve:
        return
    for record in records:
        expected = record.n // 2
        ok = record.pole_count == expected
        record.residual_diagnostics["pole_count_ok"] = ok
        if not ok:
            logger.warning(f"⚠️ {kind.slug} n={record.n}: {record.pole_count} poles, expected {expected}")


# ---------------------------------------------------------------------------
# Toy model
# ---------------------------------------------------------------------------


def _maximum_event(t: float, y: np.ndarray) -> float:
    return float(np.cos(np.pi * t * y[0]))


_maximum_event.direction = -1  # type: ignore[attr-defined]


def _toy_horizon(a: float) -> float:
    """Integration length for y(0) = a; the maxima end near t = a."""
    return 3.0 * abs(a) + 10.0


def count_maxima(a: float, horizon: float) -> int:
    """Number of maxima of the toy solution with y(0) = a on [0, horizon]."""
    solution = solve_ivp(
        toy_system,
        (0.0, horizon),
        [a],
        method="DOP853",
        rtol=1e-11,
        atol=1e-12,
        events=_maximum_event,
    )
    if solution.status < 0:
        raise PainleveIntegrationError(
            "Toy integration failed", details={"a": a, "message": solution.message}
        )
    return len(solution.t_events[0])


def _bisect_toy(bracket: tuple[float, float], tol: float, n: Optional[int]) -> EigenvalueRecord:
    lo, hi = sorted((float(bracket[0]), float(bracket[1])))
    # one horizon for the whole bracket keeps the counts comparable
    horizon = _toy_horizon(hi)
    count_lo, count_hi = count_maxima(lo, horizon), count_maxima(hi, horizon)
    index = n if n is not None else count_lo
    if not count_lo <= index < count_hi:
        raise DiscriminantAgreementError(
            "Bracket does not straddle the requested maxima jump",
            details={"bracket": (lo, hi), "counts": (count_lo, count_hi), "n": index},
        )
    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if count_maxima(mid, horizon) > index:
            hi = mid
        else:
            lo = mid
        iterations += 1
    return EigenvalueRecord(
        EigenvalueKind.toy(),
        max(index, 1),
        0.5 * (lo + hi),
        hi - lo,
        0,
        {"iterations": iterations, "horizon": horizon, "bracket": [lo, hi]},
    )


def toy_eigenvalues(
    n_max: int,
    tol: float = DEFAULT_TOL,
    settings: Optional[SolverSettings] = None,
    *,
    instrumentation: Optional[SolveInstrumentation] = None,
) -> list[EigenvalueRecord]:
    """Thresholds a_1..a_{n_max} where the maxima count steps from n to n + 1."""
    if n_max < 1:
        raise PainleveConfigurationError(
            "n_max must be at least 1", details={"parameter": "n_max", "value": n_max, "valid_range": ">= 1"}
        )
    settings = settings or SolverSettings()
    start = instrumentation.start_timer("toy") if instrumentation else 0.0
    step = settings.step_for(EigenvalueKind.toy())
    grid = _grid(step, TOY_CONSTANT * math.sqrt(n_max + 1) * 1.2 + 1.0, step)
    counts = [c for c, _ in _run_jobs(count_maxima, [(a, _toy_horizon(a)) for a in grid], settings.workers)]

    records: list[EigenvalueRecord] = []
    for n in range(1, n_max + 1):
        position = next(
            (
                i
                for i in range(len(grid) - 1)
                if counts[i] is not None and counts[i + 1] is not None and counts[i] <= n < counts[i + 1]
            ),
            None,
        )
        if position is None:
            logger.warning(f"⚠️ No toy bracket for n={n}")
            break
        records.append(_bisect_toy((grid[position], grid[position + 1]), tol, n))

    _check_sequence(EigenvalueKind.toy(), records)
    if instrumentation:
        instrumentation.record_timing("toy", start, success=len(records) == n_max)
    return records


__all__ = [
    "DEFAULT_SCAN_STEPS",
    "DEFAULT_TOL",
    "MIN_TOLERANCE",
    "SolverSettings",
    "Stage",
    "Trial",
    "bisect",
    "classify_value",
    "count_maxima",
    "estimate_index",
    "initial_state",
    "scan_brackets",
    "solve_eigen",
    "solve_sequence",
    "toy_eigenvalues",
]
