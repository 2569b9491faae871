"""
Pole navigation along a ray.

Solutions of the P-IV equation are meromorphic: on a real integration path
they run into simple poles with residue ±1 and into double zeros. The
``RayNavigator`` drives the path integrator outward along a ray
``t = origin + ρ·d`` and

* watches |y| after every step; past ``pole_threshold`` it estimates the pole
  from the Laurent expansion, rewinds to a checkpoint at least one detour
  radius away, and splices a semicircle around the pole into the path;
* bridges zeros of y: below ``zero_threshold`` it switches to the u = √y
  picture, whose equation is polynomial, and switches back once |y| exceeds
  ``zero_exit``;
* optionally feeds on-ray checkpoints and completed pole events to a monitor
  (the classifier) which can end the solve early.

Monitor input lags the integration front by a little more than one detour
radius plus one step, so nothing a monitor has seen is ever rewound.

Near a pole, with τ = t − t₀, ``y = a/τ − t₀ + c₁τ + c₂τ² + …`` where
a² = 1, c₁ = (a·t₀² − 4)/3 and c₂ is free. The refined estimator below uses
the first three terms.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections import deque
from dataclasses import dataclass, replace
from typing import Any, Optional, Protocol, Sequence

import numpy as np

from ..exceptions import (
    DegenerateDerivativeError,
    MaxStepsExceededError,
    OverlappingPolesError,
    PainleveConfigurationError,
    PoleNavigationError,
    StepUnderflowError,
    WatcherAbort,
    ZeroDenominatorError,
)
from ..models import (
    Arc,
    Checkpoint,
    Line,
    Orientation,
    PainleveState,
    PathSegment,
    PoleEvent,
    SolveRecord,
    State,
    StepControl,
    TerminationReason,
    UState,
)
from ..ode import DEFAULT_ZERO_GUARD, from_u_picture, painleve_system, sqrt_system, to_u_picture
from .integrator import integrate_segment

logger = logging.getLogger(__name__)

ON_RAY_TOL = 1e-9
LAURENT_ITERATIONS = 8


@dataclass(frozen=True)
class NavigatorSettings:
    """
    Thresholds and detour geometry.

    Attributes:
        pole_threshold: |y| at which a pole is declared
        zero_threshold: |y| below which the u-picture takes over
        zero_exit: |y| above which the y-picture resumes
        zero_guard: Smallest |y| the y-picture right-hand side accepts
        min_radius: Lower clamp of the detour radius
        max_radius: Upper clamp of the detour radius
        smallest_radius: Give up shrinking a detour below this radius
        orientation: Sense of the detour arcs
        refine_points: Checkpoints used to refine a pole location
        max_poles: Hard cap on poles in one solve
    """

    pole_threshold: float = 1e3
    zero_threshold: float = 1e-2
    zero_exit: float = 1e-1
    zero_guard: float = DEFAULT_ZERO_GUARD
    min_radius: float = 0.05
    max_radius: float = 0.2
    smallest_radius: float = 0.005
    orientation: Orientation = Orientation.COUNTERCLOCKWISE
    refine_points: int = 5
    max_poles: int = 400

    def __post_init__(self) -> None:
        if not self.pole_threshold > 1.0:
            raise PainleveConfigurationError(
                "pole_threshold must exceed 1",
                details={"parameter": "pole_threshold", "value": self.pole_threshold, "valid_range": "> 1"},
            )
        if not (self.zero_guard < self.zero_threshold < self.zero_exit < self.pole_threshold):
            raise PainleveConfigurationError(
                "Thresholds must satisfy zero_guard < zero_threshold < zero_exit < pole_threshold",
                details={
                    "parameter": "zero_threshold",
                    "value": (self.zero_guard, self.zero_threshold, self.zero_exit, self.pole_threshold),
                    "valid_range": "zero_guard < zero_threshold < zero_exit < pole_threshold",
                },
            )
        if not (0.0 < self.smallest_radius <= self.min_radius <= self.max_radius):
            raise PainleveConfigurationError(
                "Radii must satisfy 0 < smallest_radius <= min_radius <= max_radius",
                details={
                    "parameter": "min_radius",
                    "value": (self.smallest_radius, self.min_radius, self.max_radius),
                    "valid_range": "0 < smallest <= min <= max",
                },
            )
        if self.refine_points < 1:
            raise PainleveConfigurationError(
                "refine_points must be at least 1",
                details={"parameter": "refine_points", "value": self.refine_points, "valid_range": ">= 1"},
            )


class SolveMonitor(Protocol):
    """Receives on-ray checkpoints and completed pole events in ray order."""

    def observe_checkpoint(self, checkpoint: Checkpoint) -> Optional[str]: ...

    def observe_pole(self, event: PoleEvent) -> Optional[str]: ...


# Watcher reasons


@dataclass(frozen=True)
class PoleSighting:
    t: complex


@dataclass(frozen=True)
class ZeroSighting:
    t: complex


@dataclass(frozen=True)
class BridgeExit:
    t: complex


@dataclass(frozen=True)
class MonitorStop:
    reason: str


# ---------------------------------------------------------------------------
# Pole estimation
# ---------------------------------------------------------------------------


def detect_pole(state: PainleveState, threshold: float) -> Optional[tuple[complex, complex]]:
    """
    Leading-order Laurent estimate of a nearby pole.

    Returns None below ``threshold``; otherwise ``(t0, a)`` with
    ``a = −y²/y'`` and ``t0 = t − a/y``.

    Raises:
        DegenerateDerivativeError: If |y'| < |y|, where y ≈ a/(t − t₀) cannot hold
    """
    y, yp = state.y, state.yp
    if abs(y) < threshold:
        return None
    if abs(yp) < abs(y):
        raise DegenerateDerivativeError(
            "Derivative too small for a pole estimate",
            details={"t": str(state.t), "y": str(y), "yp": str(yp)},
        )
    a = -y * y / yp
    return state.t - a / y, a


def laurent_estimate(t: complex, y: complex, yp: complex) -> tuple[complex, complex]:
    """
    Pole location and residue using the constant and linear Laurent terms.

    Returns:
        (t0, a) with errors of order τ³ instead of τ
    """
    if abs(yp) < abs(y):
        raise DegenerateDerivativeError(
            "Derivative too small for a pole estimate",
            details={"t": str(t), "y": str(y), "yp": str(yp)},
        )
    a = 1.0 if (-y * y / yp).real >= 0.0 else -1.0
    tau = a / y
    for _ in range(LAURENT_ITERATIONS):
        t0 = t - tau
        c1 = (a * t0 * t0 - 4.0) / 3.0
        tau = a / (y + t0 - c1 * tau)
    t0 = t - tau
    c1 = (a * t0 * t0 - 4.0) / 3.0
    residue = -((y + t0 - c1 * tau) ** 2) / (yp - c1)
    return t0, residue


def refine_pole(samples: Sequence[Checkpoint]) -> tuple[complex, complex, float]:
    """
    Extrapolate pole estimates from several checkpoints to |y| → ∞.

    Each sample gives a Laurent estimate whose error scales like |τ|³ ≈ 1/|y|³;
    a least-squares fit ``t0(w) = t0 + β·w³`` in ``w = 1/|y|`` removes it.

    Returns:
        (location, residue, uncertainty): the residue comes from the sample
        nearest the pole; the uncertainty is the spread of the raw estimates
    """
    estimates = []
    for cp in samples:
        try:
            estimates.append((1.0 / abs(cp.y), *laurent_estimate(cp.t, cp.y, cp.yp)))
        except DegenerateDerivativeError:
            continue
    if not estimates:
        raise DegenerateDerivativeError("No usable samples for pole refinement", details={"samples": len(samples)})

    w = np.array([e[0] for e in estimates])
    locations = np.array([e[1] for e in estimates], dtype=complex)
    nearest = int(np.argmin(w))
    residue = complex(estimates[nearest][2])
    spread = float(np.max(np.abs(locations - locations[nearest])))

    if len(estimates) < 3 or np.ptp(w**3) <= 1e-3 * float(np.max(w**3)):
        return complex(locations[nearest]), residue, spread

    design = np.column_stack([np.ones_like(w), w**3])
    coeffs, *_ = np.linalg.lstsq(design.astype(complex), locations, rcond=None)
    return complex(coeffs[0]), residue, spread


def detour_radius(detected_at: complex, location: complex, settings: NavigatorSettings) -> float:
    return min(max(settings.min_radius, 2.0 * abs(detected_at - location)), settings.max_radius)


def plan_detour(
    pole: PoleEvent,
    entry_t: complex,
    orientation: Orientation = Orientation.COUNTERCLOCKWISE,
    *,
    direction: complex = -1.0,
    resume_to: Optional[complex] = None,
    known_poles: Sequence[PoleEvent] = (),
) -> list[PathSegment]:
    """
    Path from ``entry_t`` around ``pole`` and back onto the ray.

    The ray passes through ``entry_t`` with unit direction ``direction``. The
    path is a line to the circle of radius ``pole.detour_radius`` about the
    pole (omitted when ``entry_t`` is already on it), the arc on the side
    given by ``orientation``, and a line to ``resume_to`` when given.

    Raises:
        OverlappingPolesError: Another known pole lies within two radii
        PoleNavigationError: The entry is inside the circle or the ray misses it
    """
    r = pole.detour_radius
    t0 = pole.location
    d = direction / abs(direction)

    for other in known_poles:
        gap = abs(other.location - t0)
        if gap < 2.0 * r:
            raise OverlappingPolesError(
                "Another pole lies inside the detour region",
                details={"pole": str(t0), "other": str(other.location), "distance": gap, "radius": r},
            )
    if abs(entry_t - t0) < r * (1.0 - 1e-12):
        raise PoleNavigationError(
            "Detour entry lies inside the detour circle",
            details={"entry": str(entry_t), "pole": str(t0), "radius": r},
        )

    offset = (t0 - entry_t) * d.conjugate()
    along, perp = offset.real, offset.imag
    if along <= 0.0 or abs(perp) >= r:
        raise PoleNavigationError(
            "Pole is not ahead on the ray within one radius",
            details={"entry": str(entry_t), "pole": str(t0), "along": along, "perp": perp, "radius": r},
        )

    half = math.sqrt(r * r - perp * perp)
    p_in = entry_t + max(along - half, 0.0) * d
    p_out = entry_t + (along + half) * d

    theta_in = cmath.phase(p_in - t0)
    theta_out = cmath.phase(p_out - t0)
    if orientation is Orientation.COUNTERCLOCKWISE:
        while theta_out <= theta_in:
            theta_out += 2.0 * math.pi
    else:
        while theta_out >= theta_in:
            theta_out -= 2.0 * math.pi

    segments: list[PathSegment] = []
    if abs(p_in - entry_t) > 1e-12 * max(1.0, abs(entry_t)):
        segments.append(Line(entry_t, p_in))
    segments.append(Arc(t0, r, theta_in, theta_out, orientation))
    if resume_to is not None and abs(resume_to - p_out) > 1e-12 * max(1.0, abs(p_out)):
        segments.append(Line(p_out, resume_to))
    return segments


def residue_check(record: SolveRecord) -> list[tuple[PoleEvent, float]]:
    """Pair every pole event with min(|a − 1|, |a + 1|)."""
    return [(pole, pole.residue_deviation) for pole in record.poles]


# ---------------------------------------------------------------------------
# Axis driver
# ---------------------------------------------------------------------------


@dataclass
class _Detour:
    entry_index: int
    location: complex
    residue: complex
    uncertainty: float
    detected_at: complex
    radius: float
    remaining: int
    retries: int = 0


@dataclass
class _Counters:
    bridges: int = 0
    retries: int = 0


class RayNavigator:
    """
    Integrates the P-IV equation along a ray, detouring poles and bridging zeros.

    Attributes:
        checkpoints: Accepted checkpoints, the initial state first
        path: Segments actually traversed
        poles: Completed pole detours, in order
    """

    def __init__(
        self,
        initial: PainleveState,
        extent: float,
        control: StepControl,
        settings: NavigatorSettings,
        *,
        direction: complex = -1.0,
        monitor: Optional[SolveMonitor] = None,
    ) -> None:
        if extent < 0.0:
            raise PainleveConfigurationError(
                "Ray extent must be non-negative",
                details={"parameter": "extent", "value": extent, "valid_range": ">= 0"},
            )
        self.initial = initial
        self.extent = extent
        self.control = control
        self.settings = settings
        self.direction = direction / abs(direction)
        self.origin = initial.t
        self.target = self.origin + extent * self.direction
        self.monitor = monitor

        self._y_field = painleve_system(settings.zero_guard)
        self.checkpoints: list[Checkpoint] = [Checkpoint.from_state(initial, 0.0, 0)]
        self.path: list[PathSegment] = []
        self._path_offsets: list[float] = []
        self.poles: list[PoleEvent] = []
        self.events: list[str] = []
        self._queue: deque[PathSegment] = deque()
        self._floor = 0
        self._detour: Optional[_Detour] = None
        self._fed = 0
        self._poles_fed = 0
        self._decision: Optional[str] = None
        self._lag = settings.max_radius + 2.0 * control.h_max + 0.05
        self._counters = _Counters()

    # -- ray geometry -------------------------------------------------------

    def ray_position(self, t: complex) -> float:
        return ((t - self.origin) * self.direction.conjugate()).real

    def on_ray(self, t: complex) -> bool:
        return abs(((t - self.origin) * self.direction.conjugate()).imag) <= ON_RAY_TOL * max(1.0, abs(t))

    # -- main loop ----------------------------------------------------------

    def run(self) -> SolveRecord:
        termination = TerminationReason.PATH_COMPLETE
        state: State = self.initial
        if self.extent > 0.0:
            self._queue.append(Line(self.origin, self.target))

        while self._queue:
            budget = self.control.max_steps - (len(self.checkpoints) - 1)
            if budget < 1:
                termination = TerminationReason.MAX_STEPS_EXCEEDED
                self.events.append("max_steps_exceeded")
                break

            segment = self._queue.popleft()
            state = self._choose_picture(state)
            offset = self.checkpoints[-1].arclength
            self.path.append(segment)
            self._path_offsets.append(offset)
            watch = self._watch_u if isinstance(state, UState) else self._watch_y
            field = sqrt_system if isinstance(state, UState) else self._y_field

            try:
                state, _ = integrate_segment(
                    state,
                    segment,
                    replace(self.control, max_steps=budget),
                    field,
                    watch,
                    arclength_offset=offset,
                    segment_index=len(self.path) - 1,
                )
            except WatcherAbort as abort:
                tail = self._cut(segment, offset)
                outcome = abort.reason
                if isinstance(outcome, MonitorStop):
                    termination = TerminationReason.WATCHER_ABORT
                    self.events.append(f"monitor_stop:{outcome.reason}")
                    break
                if isinstance(outcome, PoleSighting):
                    resumed = self._handle_pole(abort.state)
                    if resumed is None:
                        break
                    state = resumed
                elif isinstance(outcome, ZeroSighting):
                    state = self._enter_bridge(abort.state)
                    self._push(tail)
                elif isinstance(outcome, BridgeExit):
                    state = self._leave_bridge(abort.state)
                    self._push(tail)
                continue
            except ZeroDenominatorError as e:
                tail = self._cut(segment, offset)
                last = e.state if e.state is not None else state
                state = self._enter_bridge(last)
                self._push(tail)
                continue
            except StepUnderflowError:
                self._cut(segment, offset)
                termination = TerminationReason.STEP_UNDERFLOW
                self.events.append("step_underflow")
                logger.warning(f"⚠️ Step underflow near t={self.checkpoints[-1].t:.6g}")
                break
            except MaxStepsExceededError:
                self._cut(segment, offset)
                termination = TerminationReason.MAX_STEPS_EXCEEDED
                self.events.append("max_steps_exceeded")
                break

            self._segment_done()

        if termination is TerminationReason.PATH_COMPLETE:
            self._flush()
        return self._record(termination)

    # -- picture changes ----------------------------------------------------

    def _choose_picture(self, state: State) -> State:
        if isinstance(state, PainleveState) and abs(state.y) < self.settings.zero_threshold:
            return self._enter_bridge(state)
        return state

    def _enter_bridge(self, state: State) -> State:
        if isinstance(state, UState):
            return state
        if state.y == 0:
            raise ZeroDenominatorError("Landed exactly on a zero of y", details={"t": str(state.t)}, state=state)
        u, up = to_u_picture(state.y, state.yp, zero_guard=0.0)
        self._counters.bridges += 1
        self.events.append(f"zero_bridge:{state.t}")
        logger.debug(f"Bridging zero of y near t={state.t:.6g} (|y|={abs(state.y):.3g})")
        return UState(state.t, u, up)

    def _leave_bridge(self, state: State) -> State:
        if isinstance(state, PainleveState):
            return state
        y, yp = from_u_picture(state.u, state.up)
        return PainleveState(state.t, y, yp)

    # -- watchers -----------------------------------------------------------

    def _watch_y(self, state: State, checkpoint: Checkpoint) -> Optional[Any]:
        self.checkpoints.append(checkpoint)
        magnitude = abs(checkpoint.y)
        if magnitude >= self.settings.pole_threshold:
            return PoleSighting(state.t)
        if magnitude <= self.settings.zero_threshold:
            return ZeroSighting(state.t)
        return self._feed_monitor(checkpoint)

    def _watch_u(self, state: State, checkpoint: Checkpoint) -> Optional[Any]:
        self.checkpoints.append(checkpoint)
        if abs(checkpoint.y) >= self.settings.zero_exit:
            return BridgeExit(state.t)
        return self._feed_monitor(checkpoint)

    # -- path bookkeeping ---------------------------------------------------

    def _push(self, segment: Optional[PathSegment]) -> None:
        if segment is not None:
            self._queue.appendleft(segment)

    def _cut(self, segment: PathSegment, offset: float) -> Optional[PathSegment]:
        """Trim the last path entry to what was traversed; return the remainder."""
        last = self.checkpoints[-1]
        if last.segment_index != len(self.path) - 1:
            self.path.pop()
            self._path_offsets.pop()
            return segment
        head, tail = segment.split(last.arclength - offset)
        if head is None:
            self.path.pop()
            self._path_offsets.pop()
        else:
            self.path[-1] = head
        return tail

    def _rewind(self, index: int) -> Checkpoint:
        checkpoint = self.checkpoints[index]
        del self.checkpoints[index + 1 :]
        if self._fed > index + 1:
            logger.warning(f"⚠️ Rewind past monitored checkpoints ({self._fed} > {index + 1})")
            self._fed = index + 1

        if checkpoint.arclength == 0.0:
            self.path.clear()
            self._path_offsets.clear()
            return checkpoint
        k = checkpoint.segment_index
        head, _ = self.path[k].split(checkpoint.arclength - self._path_offsets[k])
        self.path = self.path[:k] + ([head] if head is not None else [])
        self._path_offsets = self._path_offsets[: len(self.path)]
        return checkpoint

    def _segment_done(self) -> None:
        if self._detour is None:
            return
        self._detour.remaining -= 1
        if self._detour.remaining == 0:
            self._finish_detour()

    # -- poles --------------------------------------------------------------

    def _refinement_samples(self) -> list[Checkpoint]:
        floor_y = self.settings.pole_threshold / 10.0
        stretch = [cp for cp in self.checkpoints[self._floor + 1 :] if abs(cp.y) >= floor_y]
        return stretch[-self.settings.refine_points :]

    def _handle_pole(self, sighting: State) -> Optional[State]:
        if self._detour is not None:
            return self._retry_detour()

        y, yp = sighting.y_picture()
        samples = self._refinement_samples() or [Checkpoint.from_state(sighting, 0.0)]
        try:
            location, residue, uncertainty = refine_pole(samples)
        except DegenerateDerivativeError:
            estimate = detect_pole(PainleveState(sighting.t, y, yp), self.settings.pole_threshold)
            if estimate is None:
                raise
            location, residue = estimate
            uncertainty = 0.0

        radius = detour_radius(sighting.t, location, self.settings)
        distance_to_end = self.ray_position(self.target) - self.ray_position(location)
        if distance_to_end < radius * 1.01:
            radius = 0.5 * distance_to_end
            if radius < self.settings.smallest_radius:
                logger.debug(f"Pole at t={location:.6g} sits at the end of the ray; stopping there")
                self.events.append(f"pole_at_end:{location}")
                return None

        entry_index, radius = self._entry_for(location, radius)
        entry = self._rewind(entry_index)
        plan, radius = self._plan(location, residue, sighting.t, uncertainty, entry.t, radius)

        self._detour = _Detour(
            entry_index=entry_index,
            location=location,
            residue=residue,
            uncertainty=uncertainty,
            detected_at=sighting.t,
            radius=radius,
            remaining=self._detour_length(plan),
        )
        self._queue = deque(plan)
        logger.debug(
            f"📍 Pole at t0={location:.10g} (a={residue:.6g}, ±{uncertainty:.2e}); "
            f"🔁 detour r={radius:.4g} from {entry.t:.6g}"
        )
        return entry.to_state()

    def _detour_length(self, plan: list[PathSegment]) -> int:
        if isinstance(plan[-1], Line) and plan[-1].end == self.target:
            return len(plan) - 1
        return len(plan)

    def _entry_for(self, location: complex, radius: float) -> tuple[int, float]:
        pole_position = self.ray_position(location)
        while True:
            for j in range(len(self.checkpoints) - 1, self._floor - 1, -1):
                cp = self.checkpoints[j]
                if abs(cp.t - location) >= radius and self.on_ray(cp.t) and self.ray_position(cp.t) < pole_position:
                    return j, radius
            gap = abs(self.checkpoints[self._floor].t - location)
            radius = 0.9 * min(radius, gap)
            if radius < self.settings.smallest_radius:
                raise PoleNavigationError(
                    "No checkpoint far enough from the pole to start a detour",
                    details={"pole": str(location), "gap": gap, "smallest_radius": self.settings.smallest_radius},
                )

    def _plan(
        self,
        location: complex,
        residue: complex,
        detected_at: complex,
        uncertainty: float,
        entry_t: complex,
        radius: float,
    ) -> tuple[list[PathSegment], float]:
        while True:
            event = PoleEvent(location, residue, detected_at, radius, uncertainty, self.settings.orientation)
            try:
                plan = plan_detour(
                    event,
                    entry_t,
                    self.settings.orientation,
                    direction=self.direction,
                    resume_to=self.target,
                    known_poles=self.poles,
                )
                return plan, radius
            except OverlappingPolesError:
                radius *= 0.5
                if radius < self.settings.smallest_radius:
                    raise
                self.events.append(f"detour_shrink:{location}")
                logger.debug(f"Shrinking detour around {location:.6g} to r={radius:.4g} (neighbouring pole)")

    def _retry_detour(self) -> State:
        detour = self._detour
        assert detour is not None
        radius = 0.5 * detour.radius
        if radius < self.settings.smallest_radius:
            raise PoleNavigationError(
                "Detour keeps meeting other poles",
                details={"pole": str(detour.location), "radius": detour.radius},
            )
        entry = self._rewind(detour.entry_index)
        plan, radius = self._plan(
            detour.location, detour.residue, detour.detected_at, detour.uncertainty, entry.t, radius
        )
        detour.radius = radius
        detour.remaining = self._detour_length(plan)
        detour.retries += 1
        self._counters.retries += 1
        self._queue = deque(plan)
        self.events.append(f"detour_retry:{detour.location}")
        logger.debug(f"🔁 Pole met on detour around {detour.location:.6g}; retrying with r={radius:.4g}")
        return entry.to_state()

    def _finish_detour(self) -> None:
        detour = self._detour
        assert detour is not None
        event = PoleEvent(
            detour.location,
            detour.residue,
            detour.detected_at,
            detour.radius,
            detour.uncertainty,
            self.settings.orientation,
        )
        self.poles.append(event)
        self.events.append(f"pole:{event.location}")
        self._floor = len(self.checkpoints) - 1
        self._detour = None
        if len(self.poles) > self.settings.max_poles:
            raise PoleNavigationError("Pole cap exceeded", details={"max_poles": self.settings.max_poles})

    # -- monitor ------------------------------------------------------------

    def _feed_monitor(self, checkpoint: Checkpoint) -> Optional[MonitorStop]:
        if self.monitor is None or self._decision is not None:
            return None
        limit = len(self.checkpoints)
        if self._detour is not None:
            limit = min(limit, self._detour.entry_index + 1)
        horizon = checkpoint.arclength - self._lag
        while self._fed < limit and self.checkpoints[self._fed].arclength <= horizon:
            decision = self._deliver(self.checkpoints[self._fed])
            self._fed += 1
            if decision is not None:
                self._decision = decision
                return MonitorStop(decision)
        return None

    def _deliver(self, checkpoint: Checkpoint) -> Optional[str]:
        assert self.monitor is not None
        if self.on_ray(checkpoint.t):
            position = self.ray_position(checkpoint.t)
            while (
                self._poles_fed < len(self.poles)
                and self.ray_position(self.poles[self._poles_fed].location) < position
            ):
                decision = self.monitor.observe_pole(self.poles[self._poles_fed])
                self._poles_fed += 1
                if decision is not None:
                    return decision
        return self.monitor.observe_checkpoint(checkpoint)

    def _flush(self) -> None:
        if self.monitor is None or self._decision is not None:
            return
        while self._fed < len(self.checkpoints):
            decision = self._deliver(self.checkpoints[self._fed])
            self._fed += 1
            if decision is not None:
                self._decision = decision
                return
        while self._poles_fed < len(self.poles):
            decision = self.monitor.observe_pole(self.poles[self._poles_fed])
            self._poles_fed += 1
            if decision is not None:
                self._decision = decision
                return

    def _record(self, termination: TerminationReason) -> SolveRecord:
        metadata = {
            "steps": len(self.checkpoints) - 1,
            "direction": [self.direction.real, self.direction.imag],
            "extent": self.extent,
            "zero_bridges": self._counters.bridges,
            "detour_retries": self._counters.retries,
            "method": self.control.method,
        }
        return SolveRecord(
            initial=self.initial,
            checkpoints=list(self.checkpoints),
            poles=list(self.poles),
            events=list(self.events),
            termination=termination,
            path=list(self.path),
            reason=self._decision,
            metadata=metadata,
        )


def solve_ray(
    initial: PainleveState,
    extent: float,
    control: Optional[StepControl] = None,
    settings: Optional[NavigatorSettings] = None,
    *,
    direction: complex = -1.0,
    monitor: Optional[SolveMonitor] = None,
) -> SolveRecord:
    """
    Integrate from ``initial`` a distance ``extent`` along ``direction``.

    The default direction runs down the negative real axis.
    """
    navigator = RayNavigator(
        initial,
        extent,
        control or StepControl(),
        settings or NavigatorSettings(),
        direction=direction,
        monitor=monitor,
    )
    return navigator.run()


__all__ = [
    "BridgeExit",
    "MonitorStop",
    "NavigatorSettings",
    "PoleSighting",
    "RayNavigator",
    "SolveMonitor",
    "ZeroSighting",
    "detect_pole",
    "detour_radius",
    "laurent_estimate",
    "plan_detour",
    "refine_pole",
    "residue_check",
    "solve_ray",
]
