"""The kernel conj(z)/z^2 and its area integrals over planar regions.

Closed forms exist for discs (zero at interior points, a rational
expression outside) and for polygons (contour reduction of the area
integral to per-edge logarithms).  Annulus caps reduce to a 1-D radial
integral with exact angular inner integrals.  An independent
adaptive-quadrature oracle, based on ray clipping in the angular
variable, cross-checks every closed form.

All integrals use the normalization m2(B(0,1)) = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .geometry import (
    TOL,
    AnnulusCap,
    Disc,
    Square,
    circle_disc_angular_interval,
    normalized_area,
)

__all__ = [
    "IntegralResult",
    "eval_kernel",
    "disc_integral",
    "polygon_integral",
    "annulus_cap_integral",
    "clipped_disc_radial",
    "adaptive_quadrature",
    "abs_kernel_mass_bound",
]

_EPS = 2.0 ** -52


@dataclass(frozen=True)
class IntegralResult:
    """A computed integral with an error estimate and its provenance."""

    value: complex
    error_bound: float
    method: str
    converged: bool = True

    def __abs__(self) -> float:
        return abs(self.value)


def eval_kernel(z: complex) -> complex:
    """K(z) = conj(z)/z^2.  |K(z)| = 1/|z|; K(t e^{i a}) = e^{-3ia}/t."""
    if z == 0:
        raise ZeroDivisionError("kernel singular at the origin")
    return z.conjugate() / (z * z)


def disc_integral(d: Disc, omega: complex) -> IntegralResult:
    """Integral of K(omega - xi) over the disc, in closed form.

    Zero whenever omega lies in the closed disc; for exterior omega with
    w = omega - center the value is r^2*conj(w)/w^2 - r^4/w^3.  The two
    branches agree at |w| = r.
    """
    w = omega - d.center
    aw = abs(w)
    r = d.radius
    if aw <= r:
        return IntegralResult(0j, 0.0, "closed_form")
    w2 = w * w
    value = r * r * w.conjugate() / w2 - r ** 4 / (w2 * w)
    return IntegralResult(value, 8 * _EPS * abs(value), "closed_form")


def _point_segment_distance(z: complex, a: complex, b: complex) -> float:
    d = b - a
    L2 = abs(d) ** 2
    if L2 == 0.0:
        return abs(z - a)
    s = ((z - a).real * d.real + (z - a).imag * d.imag) / L2
    s = max(0.0, min(1.0, s))
    return abs(z - (a + s * d))


def polygon_integral(
    vertices: list[complex], omega: complex, tol: float = 1e-10
) -> IntegralResult:
    """Integral of K(omega - xi) over a simple counterclockwise polygon.

    Uses K(omega - xi) = d/d(conj xi) of F, F(xi) = -(conj(omega - xi))^2
    / (2 (omega - xi)^2), so the area integral equals the contour
    integral (1/pi) (1/2i) of F along the boundary; each straight edge
    is rational after eliminating conj(xi) and integrates in closed
    form.  Valid for omega inside or outside (F is bounded).  Falls back
    to adaptive quadrature when omega is within tolerance of an edge,
    where the closed form is ill-conditioned.
    """
    n = len(vertices)
    if n < 3:
        raise ValueError("polygon needs at least 3 vertices")
    scale = max(max(abs(v - omega) for v in vertices), 1e-300)
    for k in range(n):
        a, b = vertices[k], vertices[(k + 1) % n]
        if abs(b - a) <= TOL * scale:
            raise ValueError("degenerate polygon edge")
        if _point_segment_distance(omega, a, b) <= 1e-12 * scale:
            return adaptive_quadrature(vertices, omega, tol)
    total = 0j
    for k in range(n):
        a, b = vertices[k], vertices[(k + 1) % n]
        d = b - a
        q0 = omega - a
        q1 = omega - b
        B = d.conjugate() / d
        A = q0.conjugate() - B * q0
        lg = cmath.log(q1 / q0)
        # the pole is off the segment, so the argument varies by < pi
        assert abs(lg.imag) < math.pi - 1e-9
        total += 0.5 * (
            B * B * (q1 - q0) + 2 * A * B * lg - A * A * (1 / q1 - 1 / q0)
        )
    value = total / (2j * math.pi)
    return IntegralResult(value, 32 * _EPS * (abs(value) + 1 / scale),
                          "boundary_reduction")


# -- radial reduction ------------------------------------------------------

# Gauss-Kronrod 15/7 on [-1, 1]
_GK_NODES = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
])
_GK_WEIGHTS = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
])
_G7_WEIGHTS = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
])


def _angular_factor(center: complex, t: float, clip: Disc) -> complex:
    """Integral of e^{-3 i theta} over the angles where the circle of
    radius t about center lies in the clip disc."""
    total = 0j
    for alpha, beta in circle_disc_angular_interval(center, t, clip):
        total += (cmath.exp(-3j * alpha) - cmath.exp(-3j * beta)) / 3j
    return total


def _gk_panel(f, lo: float, hi: float) -> tuple[complex, float]:
    h = (hi - lo) / 2
    mid = (hi + lo) / 2
    vals = np.array([f(mid + h * x) for x in _GK_NODES])
    k15 = h * np.sum(_GK_WEIGHTS * vals)
    g7 = h * np.sum(_G7_WEIGHTS * vals[1::2])
    return k15, abs(k15 - g7)


def clipped_disc_radial(
    z: complex,
    t_lo: float,
    t_hi: float,
    clip: Disc,
    tol: float = 1e-10,
    max_depth: int = 40,
) -> IntegralResult:
    """Integral of K(z - xi) dm2(xi) over {t_lo <= |xi - z| <= t_hi}
    intersected with the clip disc.

    In polar coordinates about z the kernel is -e^{-3 i theta}/t, so the
    angular integral per radial slice is exact and only a 1-D integral
    in t remains.  Adaptive Gauss-Kronrod with panels split where the
    circle of radius t enters or leaves the clip disc.
    """
    d = abs(clip.center - z)
    R = clip.radius
    lo = max(t_lo, d - R, 0.0)
    hi = min(t_hi, d + R)
    if hi <= lo:
        return IntegralResult(0j, 0.0, "radial_reduction")
    cuts = sorted({lo, hi} | {t for t in (abs(d - R), d + R)
                              if lo < t < hi})
    f = lambda t: _angular_factor(z, t, clip)
    stack = [(cuts[i], cuts[i + 1], 0) for i in range(len(cuts) - 1)]
    total = 0j
    err = 0.0
    span = hi - lo
    converged = True
    while stack:
        a, b, depth = stack.pop()
        val, e = _gk_panel(f, a, b)
        if e <= tol * (b - a) / span or depth >= max_depth:
            total += val
            err += e
            if depth >= max_depth and e > tol * (b - a) / span:
                converged = False
        else:
            m = (a + b) / 2
            stack.append((a, m, depth + 1))
            stack.append((m, b, depth + 1))
    value = -total / math.pi
    return IntegralResult(value, err / math.pi, "radial_reduction", converged)


def annulus_cap_integral(cap: AnnulusCap, tol: float = 1e-10) -> IntegralResult:
    """Integral of K(center - xi) over the annulus cap.

    For the unclipped annulus the angular integral of e^{-3 i theta}
    over a full turn vanishes, so the result is exactly zero.
    """
    if cap.clip is None:
        return IntegralResult(0j, 0.0, "radial_reduction")
    return clipped_disc_radial(
        cap.center, cap.outer_radius / 2, cap.outer_radius, cap.clip, tol
    )


# -- adaptive quadrature oracle -------------------------------------------


def _merge_intersect(a: list[tuple[float, float]],
                     b: list[tuple[float, float]]) -> list[tuple[float, float]]:
    out = []
    for lo1, hi1 in a:
        for lo2, hi2 in b:
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if hi > lo:
                out.append((lo, hi))
    return out


def _ray_disc(omega: complex, theta: float, d: Disc) -> list[tuple[float, float]]:
    v = d.center - omega
    beta = math.cos(theta) * v.real + math.sin(theta) * v.imag
    disc = beta * beta - (abs(v) ** 2 - d.radius ** 2)
    if disc <= 0:
        return []
    s = math.sqrt(disc)
    lo, hi = max(beta - s, 0.0), beta + s
    return [(lo, hi)] if hi > lo else []


def _ray_halfplane(t_of: float, direction: float) -> tuple[float, float] | None:
    # solve t*direction <= t_of for t >= 0
    if direction > 0:
        return (0.0, t_of / direction) if t_of > 0 else None
    if direction < 0:
        return (t_of / direction, math.inf) if t_of < 0 else (0.0, math.inf)
    return (0.0, math.inf) if t_of >= 0 else None


def _ray_square(omega: complex, theta: float, q: Square) -> list[tuple[float, float]]:
    h = q.side / 2
    w = q.center - omega
    c, s = math.cos(theta), math.sin(theta)
    lo, hi = 0.0, math.inf
    for t_of, direction in (
        (w.real + h, c), (h - w.real, -c), (w.imag + h, s), (h - w.imag, -s)
    ):
        seg = _ray_halfplane(t_of, direction)
        if seg is None:
            return []
        lo, hi = max(lo, seg[0]), min(hi, seg[1])
    return [(lo, hi)] if hi > lo else []


def _ray_region(omega: complex, theta: float, region) -> list[tuple[float, float]]:
    if isinstance(region, Disc):
        return _ray_disc(omega, theta, region)
    if isinstance(region, Square):
        return _ray_square(omega, theta, region)
    if isinstance(region, AnnulusCap):
        outer = _ray_disc(omega, theta, Disc(region.center, region.outer_radius))
        inner = _ray_disc(omega, theta, Disc(region.center, region.outer_radius / 2))
        segs = []
        for lo, hi in outer:
            holes = [(max(lo, l2), min(hi, h2)) for l2, h2 in inner]
            cur = lo
            for l2, h2 in sorted(holes):
                if l2 > cur:
                    segs.append((cur, l2))
                cur = max(cur, h2)
            if hi > cur:
                segs.append((cur, hi))
        if region.clip is not None:
            segs = _merge_intersect(segs, _ray_disc(omega, theta, region.clip))
        return segs
    # a polygon, given as a vertex list
    segs = None
    verts = list(region)
    n = len(verts)
    lo, hi = 0.0, math.inf
    c, s = math.cos(theta), math.sin(theta)
    for k in range(n):
        a, b = verts[k], verts[(k + 1) % n]
        e = b - a
        # inward normal of a ccw edge
        nx, ny = -e.imag, e.real
        nl = math.hypot(nx, ny)
        nx, ny = nx / nl, ny / nl
        t_of = (a - omega).real * nx + (a - omega).imag * ny
        seg = _ray_halfplane(t_of, c * nx + s * ny)
        if seg is None:
            return []
        lo, hi = max(lo, seg[0]), min(hi, seg[1])
    return [(lo, hi)] if hi > lo else []


def _circle_circle_points(c1: complex, r1: float,
                          c2: complex, r2: float) -> list[complex]:
    # intersection points of two circles (empty if disjoint or nested)
    d = abs(c2 - c1)
    if d == 0 or d > r1 + r2 or d < abs(r1 - r2):
        return []
    a = (d * d + r1 * r1 - r2 * r2) / (2 * d)
    h2 = r1 * r1 - a * a
    if h2 < 0:
        return []
    u = (c2 - c1) / d
    mid = c1 + a * u
    off = 1j * u * math.sqrt(h2)
    return [mid + off, mid - off]


def _breakpoint_angles(omega: complex, region) -> list[float]:
    angles = []

    def disc_angles(center, radius):
        v = center - omega
        dv = abs(v)
        phi = math.atan2(v.imag, v.real)
        if dv > radius:
            half = math.asin(min(1.0, radius / dv))
            angles.extend([phi - half, phi + half, phi])
        else:
            angles.append(phi)

    if isinstance(region, Disc):
        disc_angles(region.center, region.radius)
    elif isinstance(region, Square):
        for v in region.vertices:
            w = v - omega
            angles.append(math.atan2(w.imag, w.real))
    elif isinstance(region, AnnulusCap):
        disc_angles(region.center, region.outer_radius)
        disc_angles(region.center, region.outer_radius / 2)
        if region.clip is not None:
            disc_angles(region.clip.center, region.clip.radius)
            # the ray-length function also has square-root kinks at the
            # rays through the points where the clip circle crosses the
            # annulus circles; quad needs panel endpoints there
            for rad in (region.outer_radius, region.outer_radius / 2):
                for p in _circle_circle_points(
                        region.center, rad,
                        region.clip.center, region.clip.radius):
                    w = p - omega
                    if abs(w) > 0:
                        angles.append(math.atan2(w.imag, w.real))
    else:
        for v in region:
            w = v - omega
            angles.append(math.atan2(w.imag, w.real))
    wrapped = []
    for a in angles:
        a = math.remainder(a, 2 * math.pi)
        wrapped.extend([a])
    return sorted({a for a in wrapped if -math.pi < a < math.pi})


def adaptive_quadrature(region, omega: complex, tol: float = 1e-8) -> IntegralResult:
    """Oracle integral of K(omega - xi) over a disc, square, annulus cap,
    or polygon (vertex list).

    In polar coordinates about omega the integrand of the area integral
    is the bounded function -e^{-3 i theta}/pi, so the integral equals
    -(1/pi) times the angular integral of e^{-3 i theta} L(theta), with
    L(theta) the total length of the ray through omega at angle theta
    inside the region.  Ray lengths come from direct clipping, entirely
    independent of the closed forms.  Non-convergence within the work
    budget is reported via the converged flag.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")

    def length(theta: float) -> float:
        return sum(hi - lo for lo, hi in _ray_region(omega, theta, region))

    cuts = [-math.pi] + _breakpoint_angles(omega, region) + [math.pi]
    re_total = im_total = 0.0
    err = 0.0
    converged = True
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b - a < 1e-14:
            continue
        fr = lambda th: -math.cos(3 * th) * length(th) / math.pi
        fi = lambda th: math.sin(3 * th) * length(th) / math.pi
        vr, er = quad(fr, a, b, epsabs=tol / (4 * len(cuts)),
                      epsrel=1e-12, limit=200)
        vi, ei = quad(fi, a, b, epsabs=tol / (4 * len(cuts)),
                      epsrel=1e-12, limit=200)
        re_total += vr
        im_total += vi
        err += er + ei
    if err > tol:
        converged = False
    return IntegralResult(complex(re_total, im_total), err,
                          "adaptive_quadrature", converged)


def abs_kernel_mass_bound(region: Disc | Square) -> float:
    """Upper bound 2*sqrt(m2(region)) for the integral of |K(omega - .)|
    over the region, uniform in omega.

    The extremal case is a disc centered at the singularity, where the
    integral equals twice the radius, i.e. exactly 2*sqrt(m2).
    """
    return 2.0 * math.sqrt(normalized_area(region))
