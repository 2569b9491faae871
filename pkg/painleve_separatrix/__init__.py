"""
Painlevé IV Separatrix Solver
=============================

Numerical library and CLI for the nonlinear eigenvalue problems of the fourth
Painlevé equation with both parameters zero,

    y'' = y'²/(2y) + 2t²y + 4ty² + (3/2)y³.

Solutions continued toward t → −∞ generically either run into an endless
cascade of simple poles or oscillate about y = −2t/3. The two bundles are
separated by unstable solutions that track y = −2t; they occur at discrete
initial slopes b_n (with y(0) = 1) and initial values c_n (with y'(0) = 0).

Package Architecture:
    **Equations** (``ode``): right-hand sides in the y-picture, the regular
    u = √y picture and the toy model y' = cos(πty).

    **Solver** (``solver``): contour integration on scipy's embedded
    Runge-Kutta steppers, pole detection with Laurent refinement and
    semicircular detours, zero bridging, and the asymptotic classifier.

    **Eigenvalues** (``eigensolver``): bracket scans, two-stage bisection,
    whole sequences on a process pool, toy-model thresholds.

    **Asymptotics** (``asymptotics``, ``audit``): Richardson extrapolation of
    b_n/n^{3/4} and c_n/n^{1/2}, the WKB energies of the sextic PT-symmetric
    Hamiltonian and the closed-form constants, plus the energy audit along
    complex rays.

Quick Start:
    >>> from painleve_separatrix import EigenvalueKind, bisect, analytic_B
    >>> record = bisect(EigenvalueKind.slope(), (3.0, 3.25), 1e-8)
    >>> round(record.value, 6)
    3.158373
    >>> round(analytic_B(), 6)
    4.256843

Error Handling:
    Every failure derives from ``PainleveError`` and carries a ``details``
    dictionary; see ``painleve_separatrix.exceptions``.
"""

from .asymptotics import analytic_B, analytic_C, fit_constant, gamma, richardson, slope_from_energy, wkb_energy
from .audit import action_integral, audit_ray, audit_solution, energy_at_origin
from .eigensolver import (
    SolverSettings,
    bisect,
    classify_value,
    count_maxima,
    scan_brackets,
    solve_eigen,
    solve_sequence,
    toy_eigenvalues,
)
from .exceptions import (
    PainleveConfigurationError,
    PainleveDomainError,
    PainleveEigenvalueError,
    PainleveError,
    PainleveExtrapolationError,
    PainleveIntegrationError,
    PainleveReproductionError,
)
from .models import (
    AuditRecord,
    Classification,
    ClassificationKind,
    EigenvalueKind,
    EigenvalueRecord,
    ExtrapolationResult,
    PainleveState,
    SolveRecord,
    StepControl,
    WkbParams,
)
from .solver import ClassifierSettings, NavigatorSettings, classify, solve_ray

__version__ = "0.3.0"
__license__ = "MIT"

__all__ = [
    "AuditRecord",
    "Classification",
    "ClassificationKind",
    "ClassifierSettings",
    "EigenvalueKind",
    "EigenvalueRecord",
    "ExtrapolationResult",
    "NavigatorSettings",
    "PainleveConfigurationError",
    "PainleveDomainError",
    "PainleveEigenvalueError",
    "PainleveError",
    "PainleveExtrapolationError",
    "PainleveIntegrationError",
    "PainleveReproductionError",
    "PainleveState",
    "SolveRecord",
    "SolverSettings",
    "StepControl",
    "WkbParams",
    "__license__",
    "__version__",
    "action_integral",
    "analytic_B",
    "analytic_C",
    "audit_ray",
    "audit_solution",
    "bisect",
    "classify",
    "classify_value",
    "count_maxima",
    "energy_at_origin",
    "fit_constant",
    "gamma",
    "richardson",
    "scan_brackets",
    "slope_from_energy",
    "solve_eigen",
    "solve_ray",
    "solve_sequence",
    "toy_eigenvalues",
    "wkb_energy",
]
