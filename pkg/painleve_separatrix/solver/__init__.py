"""
Contour integration of the P-IV equation.

- integrator.py: one segment or a chain of segments on scipy's RK steppers
- navigator.py: pole detection, detours and zero bridging along a ray
- classifier.py: asymptotic behaviour of a solve toward t → −∞
"""

from .classifier import (
    BehaviourTracker,
    ClassifierSettings,
    DepartureTracker,
    TrackingStretch,
    axis_distance,
    classify,
    count_poles,
    deviation_sign,
    in_tube,
    replay,
    tracking_stretch,
)
from .integrator import integrate_path, integrate_segment
from .navigator import (
    NavigatorSettings,
    RayNavigator,
    SolveMonitor,
    detect_pole,
    detour_radius,
    laurent_estimate,
    plan_detour,
    refine_pole,
    residue_check,
    solve_ray,
)

__all__ = [
    "BehaviourTracker",
    "ClassifierSettings",
    "DepartureTracker",
    "NavigatorSettings",
    "RayNavigator",
    "SolveMonitor",
    "TrackingStretch",
    "axis_distance",
    "classify",
    "count_poles",
    "detect_pole",
    "detour_radius",
    "deviation_sign",
    "in_tube",
    "integrate_path",
    "integrate_segment",
    "laurent_estimate",
    "plan_detour",
    "refine_pole",
    "replay",
    "residue_check",
    "solve_ray",
    "tracking_stretch",
]
