"""Numerical verification of a planar Cantor-type construction carrying
a 1-dimensional measure that is reflectionless for the kernel
K(z) = conj(z)/z^2: the singular integral T(1) stays uniformly bounded
off the support, yet its principal value fails everywhere on it.
"""

from ._accel import BACKEND
from .construction import (
    ConstructionTree,
    RadiiSchedule,
    ScheduleError,
    TreeNode,
    build_hierarchy,
    locate,
    pack_squares,
    verify_separation,
)
from .geometry import AnnulusCap, Disc, Square, distance, lens_area, normalized_area
from .kernel import (
    IntegralResult,
    adaptive_quadrature,
    annulus_cap_integral,
    disc_integral,
    eval_kernel,
    polygon_integral,
)
from .measure import GrowthReport, LevelMeasure, OnSupportError

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    "AnnulusCap",
    "ConstructionTree",
    "Disc",
    "GrowthReport",
    "IntegralResult",
    "LevelMeasure",
    "OnSupportError",
    "RadiiSchedule",
    "ScheduleError",
    "Square",
    "TreeNode",
    "adaptive_quadrature",
    "annulus_cap_integral",
    "build_hierarchy",
    "disc_integral",
    "distance",
    "eval_kernel",
    "lens_area",
    "locate",
    "normalized_area",
    "pack_squares",
    "polygon_integral",
    "verify_separation",
]
