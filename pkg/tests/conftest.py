import math
from pathlib import Path

import numpy as np
import pytest

from painleve_separatrix.eigensolver import SolverSettings
from painleve_separatrix.models import (
    Checkpoint,
    EigenvalueKind,
    EigenvalueRecord,
    PainleveState,
    SolveRecord,
    StepControl,
)
from painleve_separatrix.solver import ClassifierSettings, NavigatorSettings

B1 = 3.15837325
C1 = -1.98740393
CASCADE_SLOPE = 5.18498704
OSCILLATION_SLOPE = 7.18498704


@pytest.fixture
def step_control():
    """Default tolerances of the solver."""
    return StepControl()


@pytest.fixture
def loose_control():
    """Looser tolerances for tests that only need qualitative behaviour."""
    return StepControl(rel_tol=1e-9, abs_tol=1e-9, h_max=0.05)


@pytest.fixture
def navigator_settings():
    return NavigatorSettings()


@pytest.fixture
def classifier_settings():
    return ClassifierSettings()


@pytest.fixture
def solver_settings():
    return SolverSettings()


@pytest.fixture
def harmonic_field():
    """z'' = -z as a first-order system; sin is its solution from (0, 1)."""

    def field(t, z):
        return np.array([z[1], -z[0]], dtype=complex)

    return field


@pytest.fixture
def exponential_field():
    def field(t, z):
        return np.array([z[0], z[1]], dtype=complex)

    return field


def laurent_checkpoint(t0: complex, tau: complex, a: float = 1.0) -> Checkpoint:
    """
    Checkpoint on the three-term Laurent series of a P-IV pole.

    y = a/τ − t₀ + c₁τ with c₁ = (a t₀² − 4)/3, τ = t − t₀.
    """
    c1 = (a * t0 * t0 - 4.0) / 3.0
    y = a / tau - t0 + c1 * tau
    yp = -a / (tau * tau) + c1
    return Checkpoint(t0 + tau, y, yp, 0.0)


@pytest.fixture
def synthetic_pole():
    return laurent_checkpoint


def axis_record(ys, step=0.05, poles=()):
    """SolveRecord on the negative real axis with y given per grid point."""
    checkpoints = [Checkpoint(complex(-k * step), complex(y), 0j, k * step) for k, y in enumerate(ys)]
    return SolveRecord(
        initial=PainleveState(0j, complex(ys[0]), 0j),
        checkpoints=checkpoints,
        poles=list(poles),
    )


@pytest.fixture
def make_axis_record():
    return axis_record


@pytest.fixture
def tracking_profile():
    """y = −2t up to distance ``until`` and then off the tube on ``side``."""

    def profile(until: float, horizon: float = 20.0, side: float = 1.0, step: float = 0.05):
        ys = []
        for k in range(int(round(horizon / step)) + 1):
            d = k * step
            ys.append(2.0 * d if d <= until else 2.0 * d + side * 2.0 * max(1.0, d))
        return axis_record(ys, step)

    return profile


@pytest.fixture
def oscillation_profile():
    """Oscillation about −2t/3 with no poles."""

    def profile(horizon: float = 20.0, step: float = 0.05):
        ys = [2.0 * k * step / 3.0 + 0.5 * math.sin(6.0 * k * step) for k in range(int(round(horizon / step)) + 1)]
        return axis_record(ys, step)

    return profile


@pytest.fixture
def slope_records():
    """Eigenvalue records following b_n = B n^{3/4} (1 + 1/n)."""

    def build(count: int, constant: float = 4.256843):
        return [
            EigenvalueRecord(EigenvalueKind.slope(), n, constant * n**0.75 * (1.0 + 1.0 / n), 1e-9)
            for n in range(1, count + 1)
        ]

    return build


@pytest.fixture
def output_dir(tmp_path) -> Path:
    target = tmp_path / "out"
    target.mkdir()
    return target
