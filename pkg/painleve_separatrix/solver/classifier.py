"""
Asymptotic classification of solves toward t → −∞.

Generic solutions either run into an endless pole cascade or settle into an
oscillation about y = −2t/3; the separatrices between them track y = −2t.
Both trackers here consume checkpoints and pole events incrementally, so the
same code decides a finished record (``classify``) and stops a running solve
early (as a navigator monitor).

Distances are measured down the negative real axis, ``d = −Re t``. Only
checkpoints on the axis take part; detour arcs are skipped.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, replace
from typing import Optional

from ..exceptions import NeverTrackedError, PainleveConfigurationError
from ..models import Checkpoint, Classification, ClassificationKind, DepartureSide, PoleEvent, SolveRecord
from .navigator import SolveMonitor

logger = logging.getLogger(__name__)

ON_AXIS_TOL = 1e-9


@dataclass(frozen=True)
class ClassifierSettings:
    """
    Attributes:
        horizon: Distance down the axis that a solve covers
        tube_width: Relative width of the tube |y + 2t| < w·max(1, |t|)
        window: Pole-free length (and oscillation window) needed to decide
        band_width: Relative half-width of the band around −2t/3
        cascade_cap: Poles without a pole-free window that mean PoleCascade
        min_tracking: Shortest tube stretch that counts as tracking
        tracking_onset: Tracking must reach past this distance for the
                        departure discriminant
    """

    horizon: float = 20.0
    tube_width: float = 0.5
    window: float = 3.0
    band_width: float = 1.5
    cascade_cap: int = 8
    min_tracking: float = 0.75
    tracking_onset: float = 2.0

    def __post_init__(self) -> None:
        for name in ("horizon", "tube_width", "window", "band_width", "min_tracking"):
            value = getattr(self, name)
            if not value > 0.0:
                raise PainleveConfigurationError(
                    f"{name} must be positive",
                    details={"parameter": name, "value": value, "valid_range": "> 0"},
                )
        if self.cascade_cap < 1:
            raise PainleveConfigurationError(
                "cascade_cap must be at least 1",
                details={"parameter": "cascade_cap", "value": self.cascade_cap, "valid_range": ">= 1"},
            )


def axis_distance(t: complex) -> Optional[float]:
    """Distance ``−Re t`` for points on the real axis, None elsewhere."""
    if abs(t.imag) > ON_AXIS_TOL * max(1.0, abs(t)):
        return None
    return -t.real


def in_tube(d: float, y: float, tube_width: float) -> bool:
    # y tracks −2t = 2d
    return abs(y - 2.0 * d) < tube_width * max(1.0, d)


@dataclass
class TrackingStretch:
    start: float
    end: float
    side: DepartureSide

    @property
    def length(self) -> float:
        return self.end - self.start


class DepartureTracker:
    """
    Follows stretches where y stays inside the tube around y = −2t.

    With ``stop_on_departure`` it reports ``"departed"`` as soon as a stretch
    that reaches past ``tracking_onset``, is at least ``min_tracking`` long and
    is the longest so far, exits the tube.
    """

    def __init__(self, settings: ClassifierSettings, stop_on_departure: bool = False) -> None:
        self.settings = settings
        self.stop_on_departure = stop_on_departure
        self.longest: Optional[TrackingStretch] = None
        self._start: Optional[float] = None
        self._last = 0.0

    @property
    def tracking(self) -> bool:
        return self._start is not None

    def observe_checkpoint(self, checkpoint: Checkpoint) -> Optional[str]:
        d = axis_distance(checkpoint.t)
        if d is None:
            return None
        y = checkpoint.y.real
        if in_tube(d, y, self.settings.tube_width):
            if self._start is None:
                self._start = d
            self._last = d
            return None
        if self._start is None:
            return None

        side = DepartureSide.DEPARTS_ABOVE if y > 2.0 * d else DepartureSide.DEPARTS_BELOW
        stretch = TrackingStretch(self._start, self._last, side)
        self._start = None
        if self.longest is not None and stretch.length <= self.longest.length:
            return None
        self.longest = stretch
        if (
            self.stop_on_departure
            and stretch.length >= self.settings.min_tracking
            and stretch.end >= self.settings.tracking_onset
        ):
            return "departed"
        return None

    def observe_pole(self, event: PoleEvent) -> Optional[str]:  # noqa: ARG002
        return None

    def ongoing(self) -> Optional[TrackingStretch]:
        if self._start is None:
            return None
        return TrackingStretch(self._start, self._last, DepartureSide.STILL_TRACKING)

    def best(self) -> Optional[TrackingStretch]:
        """Longest stretch including the one still in progress."""
        current = self.ongoing()
        if current is not None and (self.longest is None or current.length >= self.longest.length):
            return current
        return self.longest

    def result(self) -> DepartureSide:
        best = self.best()
        if best is None or best.length < self.settings.min_tracking:
            raise NeverTrackedError(
                "Solve never tracked y = -2t",
                details={"longest": best.length if best else 0.0, "min_tracking": self.settings.min_tracking},
            )
        return best.side


class BehaviourTracker:
    """
    Decides PoleCascade or StableOscillation as soon as the evidence is in.

    Call ``finish()`` once the record is exhausted to obtain the final
    Classification, which may also be SeparatrixCandidate or Undecided.
    """

    def __init__(self, settings: ClassifierSettings) -> None:
        self.settings = settings
        self.departure = DepartureTracker(settings)
        self.decision: Optional[Classification] = None
        self.pole_positions: list[float] = []
        self._last_pole = 0.0
        self._poles_since_gap = 0
        self._last_sign = 0
        self._sign_changes: deque[float] = deque()
        self._last_violation = 0.0
        self._last_d = 0.0

    def observe_pole(self, event: PoleEvent) -> Optional[str]:
        if self.decision is not None:
            return self.decision.kind.value
        d = -event.location.real
        if d - self._last_pole >= self.settings.window:
            self._poles_since_gap = 0
        self._poles_since_gap += 1
        self.pole_positions.append(d)
        self._last_pole = d
        self._last_sign = 0
        self._sign_changes.clear()
        self._last_violation = d

        if self._poles_since_gap >= self.settings.cascade_cap:
            self.decision = Classification(ClassificationKind.POLE_CASCADE, event.location, len(self.pole_positions))
            logger.debug(f"PoleCascade decided at t={event.location:.6g} after {len(self.pole_positions)} poles")
            return self.decision.kind.value
        return None

    def observe_checkpoint(self, checkpoint: Checkpoint) -> Optional[str]:
        if self.decision is not None:
            return self.decision.kind.value
        d = axis_distance(checkpoint.t)
        if d is None or d < self._last_d:
            return None
        self._last_d = d
        self.departure.observe_checkpoint(checkpoint)

        # deviation from the oscillation centre −2t/3 = 2d/3
        offset = checkpoint.y.real - 2.0 * d / 3.0
        if abs(offset) > self.settings.band_width * max(1.0, d):
            self._last_violation = d
        sign = (offset > 0.0) - (offset < 0.0)
        if sign != 0:
            if self._last_sign != 0 and sign != self._last_sign:
                self._sign_changes.append(d)
            self._last_sign = sign
        while self._sign_changes and self._sign_changes[0] < d - self.settings.window:
            self._sign_changes.popleft()

        window = self.settings.window
        if d - self._last_pole >= window and self._last_violation <= d - window and len(self._sign_changes) >= 3:
            self.decision = Classification(
                ClassificationKind.STABLE_OSCILLATION, checkpoint.t, len(self.pole_positions)
            )
            logger.debug(f"StableOscillation decided at t={checkpoint.t:.6g}")
            return self.decision.kind.value
        return None

    def finish(self) -> Classification:
        if self.decision is not None:
            return self.decision
        d_end = self._last_d
        reached = d_end >= self.settings.horizon * (1.0 - 1e-9)
        ongoing = self.departure.ongoing()
        if ongoing is not None and ongoing.length >= self.settings.window and reached:
            poles = sum(1 for p in self.pole_positions if p < ongoing.start)
            return Classification(ClassificationKind.SEPARATRIX_CANDIDATE, complex(-ongoing.start), poles)
        if reached and self.pole_positions and d_end - self._last_pole < self.settings.window:
            return Classification(ClassificationKind.POLE_CASCADE, complex(-d_end), len(self.pole_positions))
        return Classification(ClassificationKind.UNDECIDED, complex(-d_end), len(self.pole_positions))


def replay(record: SolveRecord, monitor: SolveMonitor) -> None:
    """Feed a finished record to a monitor; each pole goes ahead of the first on-axis checkpoint past it."""
    poles = sorted(record.poles, key=lambda p: -p.location.real)
    fed = 0
    for checkpoint in record.checkpoints:
        d = axis_distance(checkpoint.t)
        if d is not None:
            while fed < len(poles) and -poles[fed].location.real < d:
                if monitor.observe_pole(poles[fed]) is not None:
                    return
                fed += 1
        if monitor.observe_checkpoint(checkpoint) is not None:
            return
    for pole in poles[fed:]:
        if monitor.observe_pole(pole) is not None:
            return


def classify(record: SolveRecord, settings: Optional[ClassifierSettings] = None) -> Classification:
    """
    Classify a solve integrated down the negative real axis.

    Returns:
        PoleCascade, StableOscillation, SeparatrixCandidate or Undecided
    """
    tracker = BehaviourTracker(settings or ClassifierSettings())
    replay(record, tracker)
    return tracker.finish()


def deviation_sign(
    record: SolveRecord,
    tube_width: Optional[float] = None,
    settings: Optional[ClassifierSettings] = None,
) -> DepartureSide:
    """
    Side on which the solve leaves the tube around −2t after its longest stretch.

    Raises:
        NeverTrackedError: No stretch of at least ``min_tracking``
    """
    settings = settings or ClassifierSettings()
    if tube_width is not None:
        settings = replace(settings, tube_width=tube_width)
    tracker = DepartureTracker(settings)
    replay(record, tracker)
    return tracker.result()


def tracking_stretch(record: SolveRecord, settings: Optional[ClassifierSettings] = None) -> Optional[TrackingStretch]:
    """Longest tube stretch of the record, or None."""
    tracker = DepartureTracker(settings or ClassifierSettings())
    replay(record, tracker)
    return tracker.best()


def count_poles(record: SolveRecord, settings: Optional[ClassifierSettings] = None) -> int:
    """
    Complete pole pairs passed before the solve's behaviour is fixed.

    Real-axis poles alternate in residue, +1 then −1, and y changes sign at
    each. A separatrix that starts below the axis passes one extra, unpaired
    pole to reach y > 0, so the pair count is half the raw count, rounded down.

    When the record tracks y = −2t for at least ``min_tracking``, the poles
    before the longest tracking stretch are counted; otherwise the poles
    before the classification was decided.
    """
    settings = settings or ClassifierSettings()
    stretch = tracking_stretch(record, settings)
    if stretch is not None and stretch.length >= settings.min_tracking:
        passed = sum(1 for p in record.poles if -p.location.real < stretch.start)
    else:
        cutoff = -classify(record, settings).decided_at.real
        passed = sum(1 for p in record.poles if -p.location.real <= cutoff)
    return passed // 2


__all__ = [
    "BehaviourTracker",
    "ClassifierSettings",
    "DepartureTracker",
    "TrackingStretch",
    "axis_distance",
    "classify",
    "count_poles",
    "deviation_sign",
    "in_tube",
    "replay",
    "tracking_stretch",
]
