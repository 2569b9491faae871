"""
Published values used as the expected-value manifest of ``reproduce``.

Each entry carries its own acceptance tolerance: 1e−6 for the low
eigenvalues, 1e−5 for n = 11 and 12, 1e−4 for the extrapolated constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .models import EigenvalueKind, EigenvalueTag


@dataclass(frozen=True)
class ReferenceValue:
    name: str
    value: float
    tolerance: float

    def check(self, computed: float) -> bool:
        return abs(computed - self.value) <= self.tolerance


SLOPE_EIGENVALUES: dict[int, float] = {
    1: 3.15837325,
    2: 6.18498704,
    3: 8.79172082,
    4: 11.1720921,
    5: 13.3990049,
    11: 24.9911479,
    12: 26.7370929,
}

VALUE_EIGENVALUES: dict[int, float] = {
    1: -1.98740393,
    2: -3.23535569,
    3: -4.1616081,
    4: -4.91908695,
    11: -8.51211189,
    12: -8.90805963,
}

B_CONSTANT = 4.256843
C_CONSTANT = -2.626587
TOY_CONSTANT = 2.0 ** (5.0 / 6.0)

CONSTANT_TOLERANCE = 1e-4
ANALYTIC_TOLERANCE = 5e-7
TOY_RELATIVE_TOLERANCE = 0.01
ENERGY_RATIO_BAND = (0.9, 1.1)


def eigenvalue_tolerance(n: int) -> float:
    return 1e-6 if n <= 5 else 1e-5


def published_value(kind: EigenvalueKind, n: int) -> Optional[float]:
    """Published eigenvalue for the default held datum, or None."""
    if kind.tag is EigenvalueTag.INITIAL_SLOPE and kind.fixed_datum == 1.0:
        return SLOPE_EIGENVALUES.get(n)
    if kind.tag is EigenvalueTag.INITIAL_VALUE and kind.fixed_datum == 0.0:
        return VALUE_EIGENVALUES.get(n)
    return None


def eigenvalue_references(kind: EigenvalueKind) -> list[ReferenceValue]:
    table = SLOPE_EIGENVALUES if kind.tag is EigenvalueTag.INITIAL_SLOPE else VALUE_EIGENVALUES
    return [ReferenceValue(f"{kind.slug}_{n}", value, eigenvalue_tolerance(n)) for n, value in sorted(table.items())]


__all__ = [
    "B_CONSTANT",
    "C_CONSTANT",
    "ReferenceValue",
    "eigenvalue_references",
    "eigenvalue_tolerance",
    "published_value",
]
