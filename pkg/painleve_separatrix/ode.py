"""
Right-hand sides and picture changes.

Three equations live here:

* the fourth Painlevé equation with both parameters zero,
  ``y'' = y'^2/(2y) + 2 t^2 y + 4 t y^2 + (3/2) y^3``;
* its square-root form ``u = sqrt(y)``, ``u'' = t^2 u + 2 t u^3 + (3/4) u^5``,
  which is polynomial and stays regular at the (double) zeros of y;
* the real toy model ``y' = cos(π t y)``.

The ``*_system`` helpers adapt the first two to the vector-field signature
``f(t, z) -> dz/dt`` that the path integrator expects, with ``z = [y, y']``
or ``z = [u, u']``.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable, Optional

import numpy as np

from .exceptions import ZeroDenominatorError
from .models import PainleveState, UState

DEFAULT_ZERO_GUARD = 1e-12

VectorField = Callable[[complex, np.ndarray], np.ndarray]


def p4_field(t: complex, y: complex, yp: complex, zero_guard: float = DEFAULT_ZERO_GUARD) -> tuple[complex, complex]:
    """Return (y', y'') for the P-IV system; raises ZeroDenominatorError near y = 0."""
    if abs(y) < zero_guard:
        raise ZeroDenominatorError(
            "|y| below the zero guard",
            details={"t": str(t), "y": str(y), "zero_guard": zero_guard},
        )
    y2 = y * y
    dyp = yp * yp / (2.0 * y) + 2.0 * t * t * y + 4.0 * t * y2 + 1.5 * y2 * y
    return yp, dyp


def p4_rhs(state: PainleveState, zero_guard: float = DEFAULT_ZERO_GUARD) -> tuple[complex, complex]:
    """
    Evaluate the P-IV right-hand side at ``state``.

    Args:
        state: Point (t, y, y')
        zero_guard: Smallest |y| for which y'²/(2y) is evaluated

    Returns:
        (dy, dyp) = (y', y'')

    Raises:
        ZeroDenominatorError: If |y| < zero_guard
    """
    return p4_field(state.t, state.y, state.yp, zero_guard)


def u_field(t: complex, u: complex, up: complex) -> tuple[complex, complex]:
    u2 = u * u
    u3 = u2 * u
    return up, t * t * u + 2.0 * t * u3 + 0.75 * u3 * u2


def u_rhs(state: UState) -> tuple[complex, complex]:
    """Evaluate ``(u', u'')`` for the square-root picture; defined everywhere."""
    return u_field(state.t, state.u, state.up)


def toy_rhs(t: float, y: float) -> float:
    """y' = cos(π t y)."""
    return math.cos(math.pi * t * y)


def to_u_picture(
    y: complex,
    yp: complex,
    zero_guard: float = DEFAULT_ZERO_GUARD,
    previous: Optional[complex] = None,
) -> tuple[complex, complex]:
    """
    Map (y, y') to (u, u') with u² = y.

    The principal square root is used unless ``previous`` is given, in which
    case the root closer to ``previous`` is chosen so that u stays continuous
    along a path.

    Raises:
        ZeroDenominatorError: If |y| < zero_guard
    """
    if abs(y) < zero_guard:
        raise ZeroDenominatorError(
            "Cannot take u = sqrt(y) at a zero of y",
            details={"y": str(y), "zero_guard": zero_guard},
        )
    u = cmath.sqrt(y)
    if previous is not None and abs(-u - previous) < abs(u - previous):
        u = -u
    return u, yp / (2.0 * u)


def from_u_picture(u: complex, up: complex) -> tuple[complex, complex]:
    return u * u, 2.0 * u * up


def painleve_system(zero_guard: float = DEFAULT_ZERO_GUARD) -> VectorField:
    """Vector field ``f(t, [y, y'])`` for the integrator."""

    def field(t: complex, z: np.ndarray) -> np.ndarray:
        dy, dyp = p4_field(t, complex(z[0]), complex(z[1]), zero_guard)
        return np.array([dy, dyp], dtype=complex)

    return field


def sqrt_system(t: complex, z: np.ndarray) -> np.ndarray:
    """Vector field ``f(t, [u, u'])`` for the integrator."""
    du, dup = u_field(t, complex(z[0]), complex(z[1]))
    return np.array([du, dup], dtype=complex)


def toy_system(t: float, y: np.ndarray) -> np.ndarray:
    """Toy model in the ``solve_ivp`` signature."""
    return np.cos(np.pi * t * y)


__all__ = [
    "DEFAULT_ZERO_GUARD",
    "VectorField",
    "from_u_picture",
    "p4_field",
    "p4_rhs",
    "painleve_system",
    "sqrt_system",
    "to_u_picture",
    "toy_rhs",
    "toy_system",
    "u_field",
    "u_rhs",
]
