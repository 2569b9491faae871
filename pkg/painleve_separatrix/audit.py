"""
Energy audit along complex rays.

With u = √y the equation becomes u'' = t²u + 2tu³ + ¾u⁵. Multiplying by u'
and integrating from 0 to x gives

    −½u'(x)² + ⅛u(x)⁶ + I(x) = −½u'(0)² + ⅛u(0)⁶ = H₀,
    I(x) = ∫₀ˣ (t²uu' + 2tu³u') dt.

For large eigenvalue index the action integral I is small against H₀ on the
rays arg t = −π/4 and −3π/4, which is what ties the nonlinear eigenvalues to
the spectrum of the sextic Hamiltonian. This module re-integrates a solution
along such a ray and samples H, I and |I|/|H₀|.
"""

from __future__ import annotations

import cmath
import logging
import math
from typing import Optional, Sequence

from .asymptotics import energy_of
from .eigensolver import SolverSettings, solve_sequence
from .exceptions import BranchDiscontinuityError, PainleveDomainError, ZeroDenominatorError
from .models import AuditRecord, AuditSample, Checkpoint, EigenvalueKind, EigenvalueRecord, PainleveState, SolveRecord
from .ode import u_field
from .reference import published_value
from .solver.navigator import solve_ray

logger = logging.getLogger(__name__)

DEFAULT_ANGLES = (-math.pi / 4.0, -3.0 * math.pi / 4.0)
DEFAULT_MAX_SAMPLES = 200
# nearest root must beat the other by this factor
BRANCH_AMBIGUITY = 0.5
TINY_U = 1e-8

UPoint = tuple[complex, complex, complex]


def hamiltonian(u: complex, up: complex) -> complex:
    """H = −½u'² + ⅛u⁶."""
    return -0.5 * up * up + 0.125 * u**6


def energy_at_origin(y0: float, b: float) -> float:
    """
    H₀ for u(0) = √y0, u'(0) = b/(2√y0), i.e. −b²/(8y0) + y0³/8.

    Raises:
        ZeroDenominatorError: y0 = 0
    """
    if y0 == 0.0:
        raise ZeroDenominatorError("H at the origin needs y(0) != 0", details={"y0": y0, "b": b})
    return -(b * b) / (8.0 * y0) + y0**3 / 8.0


def _integrand(t: complex, u: complex, up: complex) -> tuple[complex, complex]:
    """f = t²uu' + 2tu³u' and its total derivative along the solution."""
    _, upp = u_field(t, u, up)
    u2 = u * u
    u3 = u2 * u
    f = t * t * u * up + 2.0 * t * u3 * up
    df = (
        2.0 * t * u * up
        + t * t * (up * up + u * upp)
        + 2.0 * u3 * up
        + 2.0 * t * (3.0 * u2 * up * up + u3 * upp)
    )
    return f, df


def track_branch(checkpoints: Sequence[Checkpoint], initial_u: Optional[complex] = None) -> list[UPoint]:
    """
    Continuous u = √y along a sequence of checkpoints.

    Each root is chosen nearest to the second-order Taylor prediction from the
    previous point. The first point takes the principal root unless
    ``initial_u`` is given.

    Returns:
        (t, u, u') per checkpoint

    Raises:
        BranchDiscontinuityError: Both roots are comparably far from the
            prediction; the checkpoints are too coarse to follow u
    """
    points: list[UPoint] = []
    for index, checkpoint in enumerate(checkpoints):
        root = cmath.sqrt(checkpoint.y)
        if not points:
            u = root
            if initial_u is not None and abs(-root - initial_u) < abs(root - initial_u):
                u = -root
        else:
            t0, u0, up0 = points[-1]
            _, upp0 = u_field(t0, u0, up0)
            dt = checkpoint.t - t0
            predicted = u0 + up0 * dt + 0.5 * upp0 * dt * dt
            near, far = (root, -root) if abs(root - predicted) <= abs(-root - predicted) else (-root, root)
            if abs(near) > TINY_U and abs(near - predicted) > BRANCH_AMBIGUITY * abs(far - predicted):
                raise BranchDiscontinuityError(
                    "Square-root branch is ambiguous between checkpoints",
                    details={
                        "index": index,
                        "t": str(checkpoint.t),
                        "predicted": str(predicted),
                        "root": str(near),
                    },
                )
            u = near
        up = checkpoint.yp / (2.0 * u) if u != 0 else 0j
        points.append((checkpoint.t, u, up))
    return points


def _cumulative_action(points: Sequence[UPoint]) -> list[complex]:
    """I at every point; Hermite-corrected trapezoid between neighbours."""
    totals = [0j]
    if not points:
        return totals
    f0, df0 = _integrand(*points[0])
    for previous, current in zip(points, points[1:]):
        h = current[0] - previous[0]
        f1, df1 = _integrand(*current)
        totals.append(totals[-1] + 0.5 * h * (f0 + f1) + h * h / 12.0 * (df0 - df1))
        f0, df0 = f1, df1
    return totals


def _path_checkpoints(record: SolveRecord) -> list[Checkpoint]:
    checkpoints = list(record.checkpoints)
    if not checkpoints or checkpoints[0].t != record.initial.t:
        checkpoints.insert(0, Checkpoint.from_state(record.initial, 0.0))
    return checkpoints


def action_integral(record: SolveRecord, upto: Optional[int] = None) -> complex:
    """
    I along the record's path, up to checkpoint ``upto`` (default: the end).

    Raises:
        BranchDiscontinuityError: u = √y cannot be followed continuously
    """
    checkpoints = _path_checkpoints(record)
    if upto is not None:
        checkpoints = checkpoints[: upto + 1]
    return _cumulative_action(track_branch(checkpoints))[-1]


def _thin(indices: list[int], limit: int) -> list[int]:
    if len(indices) <= limit:
        return indices
    stride = len(indices) / float(limit - 1)
    chosen = sorted({indices[min(len(indices) - 1, int(round(k * stride)))] for k in range(limit - 1)})
    if chosen[-1] != indices[-1]:
        chosen.append(indices[-1])
    return chosen


def audit_solution(
    y0: float,
    yp0: float,
    angle: float,
    x_max: float,
    settings: Optional[SolverSettings] = None,
    *,
    n: int = 0,
    max_samples: int = DEFAULT_MAX_SAMPLES,
) -> AuditRecord:
    """
    Integrate (y0, yp0) along t = ρe^{iθ}, 0 ≤ ρ ≤ x_max, and sample H, I.

    Samples are taken at on-ray checkpoints, thinned to ``max_samples`` and
    ordered by |x|. The invariant drift max |H + I − H₀| over the whole path
    is kept in the metadata.
    """
    if x_max < 0.0:
        raise PainleveDomainError("x_max must be non-negative", details={"x_max": x_max})
    H0 = complex(energy_at_origin(y0, yp0))
    metadata = {"y0": y0, "yp0": yp0, "x_max": x_max}
    if x_max == 0.0:
        return AuditRecord(n, angle, [AuditSample(0j, H0, 0j, 0.0)], H0, metadata)

    settings = settings or SolverSettings()
    direction = cmath.exp(1j * angle)
    record = solve_ray(
        PainleveState(0j, complex(y0), complex(yp0)),
        x_max,
        settings.control,
        settings.navigator,
        direction=direction,
    )

    checkpoints = _path_checkpoints(record)
    points = track_branch(checkpoints)
    totals = _cumulative_action(points)

    on_ray = [
        k
        for k, checkpoint in enumerate(checkpoints)
        if abs((checkpoint.t * direction.conjugate()).imag) <= 1e-9 * max(1.0, abs(checkpoint.t))
    ]
    samples = []
    for k in _thin(on_ray, max(2, max_samples)):
        t, u, up = points[k]
        I = totals[k]
        samples.append(AuditSample(t, hamiltonian(u, up), I, abs(I) / abs(H0) if H0 != 0 else abs(I)))

    drift = max(abs(hamiltonian(u, up) + I - H0) for (_, u, up), I in zip(points, totals))
    metadata.update(
        {
            "termination": record.termination.value,
            "poles": len(record.poles),
            "steps": record.step_count,
            "invariant_drift": drift,
            "ratio_reading": "|I|/|H0|" if H0 != 0 else "|I|",
        }
    )
    logger.debug(f"Audit along arg t={angle:.4f}: {len(samples)} samples, drift {drift:.2e}, {len(record.poles)} poles")
    return AuditRecord(n, angle, samples, H0, metadata)


def audit_ray(
    n: int,
    kind: EigenvalueKind,
    angle: float = DEFAULT_ANGLES[0],
    x_max: float = 1.0,
    value: Optional[float] = None,
    *,
    settings: Optional[SolverSettings] = None,
    tol: float = 1e-8,
) -> AuditRecord:
    """
    Audit the n-th separatrix of a P-IV family along arg t = ``angle``.

    The eigenvalue is taken from ``value``, else from the published manifest,
    else solved for.
    """
    if not kind.is_painleve:
        raise PainleveDomainError("The toy model has no energy audit", details={"kind": kind.tag.value})
    settings = settings or SolverSettings()
    if value is None:
        value = published_value(kind, n)
    if value is None:
        records = solve_sequence(kind, n, tol, settings)
        matches = [r for r in records if r.n == n]
        if not matches:
            raise PainleveDomainError(
                "Eigenvalue could not be solved for the audit", details={"n": n, "kind": kind.slug}
            )
        value = matches[0].value

    y0, yp0 = kind.initial_data(value)
    audit = audit_solution(y0, yp0, angle, x_max, settings, n=n)
    energy = energy_of(EigenvalueRecord(kind, n, value, 0.0))
    audit.metadata.update({"kind": kind.slug, "value": value, "energy": energy})
    return audit


__all__ = [
    "DEFAULT_ANGLES",
    "action_integral",
    "audit_ray",
    "audit_solution",
    "energy_at_origin",
    "hamiltonian",
    "track_branch",
]
