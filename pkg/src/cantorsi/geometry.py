"""Planar primitives: discs, axis-aligned squares, annulus caps.

Points of the plane are plain Python complex numbers.  Areas follow the
normalization m2(B(0,1)) = 1, i.e. standard Lebesgue area divided by pi.
All predicates use an absolute tolerance scaled by the largest input
magnitude; tangencies and null-set intersections count as empty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "TOL",
    "Disc",
    "Square",
    "AnnulusCap",
    "normalized_area",
    "lens_area",
    "circle_disc_angular_interval",
    "distance",
]

TOL = 1e-12


def _check_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError("geometry requires finite coordinates")


@dataclass(frozen=True)
class Disc:
    """Closed disc with complex center and positive radius."""

    center: complex
    radius: float

    def __post_init__(self):
        _check_finite(self.center.real, self.center.imag, self.radius)
        if self.radius <= 0:
            raise ValueError("disc radius must be positive")

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        return abs(z - self.center) <= self.radius + tol

    def scaled(self, a: float) -> "Disc":
        """Concentric enlargement by a factor a."""
        return Disc(self.center, a * self.radius)


@dataclass(frozen=True)
class Square:
    """Closed axis-aligned square with complex center and positive side."""

    center: complex
    side: float

    def __post_init__(self):
        _check_finite(self.center.real, self.center.imag, self.side)
        if self.side <= 0:
            raise ValueError("square side must be positive")

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        h = self.side / 2 + tol
        w = z - self.center
        return abs(w.real) <= h and abs(w.imag) <= h

    @property
    def vertices(self) -> list[complex]:
        """Corners in counterclockwise order."""
        h = self.side / 2
        c = self.center
        return [c + complex(-h, -h), c + complex(h, -h),
                c + complex(h, h), c + complex(-h, h)]


@dataclass(frozen=True)
class AnnulusCap:
    """Annulus {outer_radius/2 <= |z - center| <= outer_radius}, optionally
    clipped to a disc.  The inner radius is outer_radius/2 by definition."""

    center: complex
    outer_radius: float
    clip: Disc | None = None

    def __post_init__(self):
        _check_finite(self.center.real, self.center.imag, self.outer_radius)
        if self.outer_radius <= 0:
            raise ValueError("annulus outer radius must be positive")

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        t = abs(z - self.center)
        if not (self.outer_radius / 2 - tol <= t <= self.outer_radius + tol):
            return False
        return self.clip is None or self.clip.contains(z, tol)


def normalized_area(region: Disc | Square) -> float:
    """Area in the normalization where the unit disc has measure 1."""
    if isinstance(region, Disc):
        return region.radius * region.radius
    if isinstance(region, Square):
        return region.side * region.side / math.pi
    raise TypeError(f"unsupported region {type(region).__name__}")


def lens_area(d1: Disc, d2: Disc) -> float:
    """Normalized area of the intersection of two closed discs.

    Standard two-circle lens formula, divided by pi.  Tangency resolves
    to zero area.
    """
    r1, r2 = d1.radius, d2.radius
    d = abs(d1.center - d2.center)
    if d >= r1 + r2:
        return 0.0
    if d <= abs(r1 - r2):
        return min(r1, r2) ** 2
    # circular segment areas on each side of the radical axis
    x1 = (d * d + r1 * r1 - r2 * r2) / (2 * d)
    x2 = d - x1
    a1 = r1 * r1 * math.acos(max(-1.0, min(1.0, x1 / r1)))
    a1 -= x1 * math.sqrt(max(0.0, r1 * r1 - x1 * x1))
    a2 = r2 * r2 * math.acos(max(-1.0, min(1.0, x2 / r2)))
    a2 -= x2 * math.sqrt(max(0.0, r2 * r2 - x2 * x2))
    return (a1 + a2) / math.pi


def circle_disc_angular_interval(
    center: complex, t: float, clip: Disc
) -> list[tuple[float, float]]:
    """Angles theta with center + t*exp(i*theta) inside the clip disc.

    Returns 0, 1, or 2 closed intervals within [-pi, pi]; a wraparound
    interval is split in two.  The full circle comes back as [(-pi, pi)].
    """
    if t <= 0:
        raise ValueError("circle radius t must be positive")
    v = clip.center - center
    d = abs(v)
    R = clip.radius
    scale = max(t, d, R)
    if d <= TOL * scale:
        # concentric: all or nothing
        return [(-math.pi, math.pi)] if t <= R else []
    cos_half = (t * t + d * d - R * R) / (2 * t * d)
    if cos_half <= -1.0:
        return [(-math.pi, math.pi)]
    if cos_half >= 1.0:
        return []
    half = math.acos(cos_half)
    phi = math.atan2(v.imag, v.real)
    lo, hi = phi - half, phi + half
    if lo >= -math.pi and hi <= math.pi:
        return [(lo, hi)]
    # wraparound: renormalize into [-pi, pi]
    lo = math.remainder(lo, 2 * math.pi)
    hi = math.remainder(hi, 2 * math.pi)
    if lo <= hi:
        return [(lo, hi)]
    return [(-math.pi, hi), (lo, math.pi)]


def _point_square_distance(z: complex, q: Square) -> float:
    w = z - q.center
    h = q.side / 2
    dx = max(abs(w.real) - h, 0.0)
    dy = max(abs(w.imag) - h, 0.0)
    return math.hypot(dx, dy)


def _point_square_boundary_distance(z: complex, q: Square) -> float:
    w = z - q.center
    h = q.side / 2
    if abs(w.real) <= h and abs(w.imag) <= h:
        return min(h - abs(w.real), h - abs(w.imag))
    return _point_square_distance(z, q)


def _square_square_distance(a: Square, b: Square) -> float:
    w = b.center - a.center
    ha, hb = a.side / 2, b.side / 2
    dx = max(abs(w.real) - ha - hb, 0.0)
    dy = max(abs(w.imag) - ha - hb, 0.0)
    return math.hypot(dx, dy)


class SquareBoundary:
    """Marker wrapping a square so distance() measures to its boundary."""

    def __init__(self, square: Square):
        self.square = square


def distance(a, b) -> float:
    """Euclidean set distance between discs, squares, square boundaries."""
    if isinstance(b, SquareBoundary):
        a, b = b, a
    if isinstance(a, SquareBoundary):
        if isinstance(b, Disc):
            d = _point_square_boundary_distance(b.center, a.square)
            return max(d - b.radius, 0.0)
        raise TypeError("boundary distance is supported from a Disc")
    if isinstance(a, Disc) and isinstance(b, Disc):
        return max(abs(a.center - b.center) - a.radius - b.radius, 0.0)
    if isinstance(a, Disc) and isinstance(b, Square):
        return max(_point_square_distance(a.center, b) - a.radius, 0.0)
    if isinstance(a, Square) and isinstance(b, Disc):
        return distance(b, a)
    if isinstance(a, Square) and isinstance(b, Square):
        return _square_square_distance(a, b)
    raise TypeError(
        f"unsupported operands {type(a).__name__}, {type(b).__name__}"
    )
