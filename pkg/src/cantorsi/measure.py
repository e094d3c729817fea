"""Level measures and their singular integral T(1).

The level-n measure puts density 1/r_n on each level-n core disc, so
every disc carries mass r_n and the total mass is 1.  T(1)(z) is the
integral of K(z - xi) against the measure: a sum of disc closed forms
(exact evaluator), a treecode that replaces far subtrees by a single
disc of equal mass (fast evaluator, with an explicit error budget from
the kernel's smoothness |grad K| <= 3/|u|^2), and radially reduced
clipped integrals for annuli and truncations.

Summation order is fixed (ascending node index = construction preorder)
with compensated accumulation, so results are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _accel
from .construction import ConstructionTree
from .geometry import Disc
from .kernel import IntegralResult

__all__ = ["OnSupportError", "GrowthReport", "LevelMeasure"]

_EPS = 2.0 ** -52
_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


class OnSupportError(ValueError):
    """Evaluation point inside or too close to a core disc."""


def _gl(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


def _lens_vec(dist: np.ndarray, r1: float, r2: np.ndarray | float) -> np.ndarray:
    """Vectorized normalized lens area of discs radius r1 (at distances
    `dist` from the query center) with a disc of radius r2."""
    r2 = np.asarray(r2, dtype=float)
    d = np.asarray(dist, dtype=float)
    full = np.minimum(r1, r2) ** 2
    out = np.where(d <= np.abs(r1 - r2), full, 0.0)
    part = (d < r1 + r2) & (d > np.abs(r1 - r2))
    if np.any(part):
        dp = d[part]
        rb = np.broadcast_to(r2, d.shape)[part]
        x1 = (dp * dp + r1 * r1 - rb * rb) / (2 * dp)
        x2 = dp - x1
        a1 = r1 * r1 * np.arccos(np.clip(x1 / r1, -1, 1))
        a1 -= x1 * np.sqrt(np.maximum(r1 * r1 - x1 * x1, 0.0))
        a2 = rb * rb * np.arccos(np.clip(x2 / rb, -1, 1))
        a2 -= x2 * np.sqrt(np.maximum(rb * rb - x2 * x2, 0.0))
        lens = (a1 + a2) / math.pi
        out = np.where(part, 0.0, out)
        out[part] = lens
    return out


def _exterior_terms(w: np.ndarray, r: float) -> np.ndarray:
    """Closed-form disc integrals r^2 conj(w)/w^2 - r^4/w^3, zero where
    |w| <= r (interior points)."""
    m = np.abs(w) ** 2
    r2 = r * r
    ext = m > r2
    with np.errstate(divide="ignore", invalid="ignore"):
        f = np.where(ext, (r2 / (m * m)) * (1.0 - r2 / m), 0.0)
    return np.conj(w) ** 3 * f


def _batch_clipped_radial(
    z: complex,
    t_lo: float,
    t_hi: float,
    centers: np.ndarray,
    R: float,
    order: int = 48,
) -> tuple[complex, float]:
    """Sum over clip discs (common radius R) of the integral of
    K(z - xi) dm2 over {t_lo <= |xi - z| <= t_hi} intersect the disc.

    Radial reduction: per slice the angular integral is exact,
    (2/3) e^{-3 i phi} sin(3 Delta(t)); the t-integral is taken in the
    angle u at the clip center (t^2 = d^2 + R^2 - 2 d R cos u), which
    removes the square-root endpoints, then fixed-order Gauss-Legendre.
    The error estimate compares two quadrature orders.
    """
    if len(centers) == 0:
        return 0j, 0.0
    v = centers - z
    d = np.abs(v)
    phi = np.angle(v)
    ok = d > 0
    lo = np.maximum(t_lo, np.abs(d - R))
    hi = np.minimum(t_hi, d + R)
    ok &= hi > lo
    if not np.any(ok):
        return 0j, 0.0
    d, phi, lo, hi = d[ok], phi[ok], lo[ok], hi[ok]

    def integral(n: int) -> np.ndarray:
        x, wq = _gl(n)
        with np.errstate(invalid="ignore"):
            u_lo = np.arccos(np.clip(
                (d * d + R * R - lo * lo) / (2 * d * R), -1, 1))
            u_hi = np.arccos(np.clip(
                (d * d + R * R - hi * hi) / (2 * d * R), -1, 1))
        half = (u_hi - u_lo) / 2
        mid = (u_hi + u_lo) / 2
        u = mid[:, None] + half[:, None] * x[None, :]
        t2 = d[:, None] ** 2 + R * R - 2 * R * d[:, None] * np.cos(u)
        t = np.sqrt(np.maximum(t2, 1e-300))
        cosdel = np.clip((t2 + d[:, None] ** 2 - R * R) / (2 * t * d[:, None]),
                         -1, 1)
        delta = np.arccos(cosdel)
        dt_du = R * d[:, None] * np.sin(u) / t
        vals = np.sum(np.sin(3 * delta) * dt_du * wq[None, :], axis=1) * half
        return vals

    i_hi = integral(order)
    i_lo = integral(max(order * 2 // 3, 8))
    pref = -(2.0 / (3.0 * math.pi)) * np.exp(-3j * phi)
    terms = pref * i_hi
    err = float(np.sum(np.abs(pref) * np.abs(i_hi - i_lo)))
    return complex(math.fsum(terms.real), math.fsum(terms.imag)), err


@dataclass
class GrowthReport:
    """Samples of the linear-growth ratio mass(B(z,r))/r."""

    samples: list[tuple[complex, float, float, float]]
    max_ratio: float


class LevelMeasure:
    """The measure with density 1/r_n on each level-n core disc."""

    def __init__(self, tree: ConstructionTree, level: int | None = None):
        if level is None:
            level = tree.depth
        if not 0 <= level <= tree.depth:
            raise ValueError("level out of range")
        self.tree = tree
        self.level = level
        lv = tree.levels[level]
        self.radius = lv.radius
        self.centers = lv.centers
        self._cre = np.ascontiguousarray(lv.centers.real)
        self._cim = np.ascontiguousarray(lv.centers.imag)
        self._kd = None

    # -- geometry helpers -------------------------------------------------

    def _kdtree(self):
        if self._kd is None:
            from scipy.spatial import cKDTree

            pts = np.column_stack([self._cre, self._cim])
            self._kd = cKDTree(pts)
        return self._kd

    def support_distance(self, z: complex) -> float:
        """Distance from z to the union of core discs (negative inside)."""
        d, _ = self._kdtree().query([z.real, z.imag])
        return float(d) - self.radius

    def _check_off_support(self, min_center_dist: float) -> None:
        if min_center_dist <= self.radius * (1.0 + 1e-9):
            raise OnSupportError(
                "evaluation point on or too close to the support"
            )

    # -- mass queries -----------------------------------------------------

    def mass_on_disc(self, q: Disc) -> float:
        """Exact mass of the query disc: pruned descent of the hierarchy,
        closing full subtrees at their exact mass r_k and finishing with
        lens areas at the measure's level."""
        sched = self.tree.schedule
        parts: list[float] = []
        active = np.array([0], dtype=np.int64)
        for k in range(self.level):
            lv = self.tree.levels[k]
            d = np.abs(q.center - lv.centers[active])
            enl = lv.enlarged_radius
            full = d + enl <= q.radius
            n_full = int(np.count_nonzero(full))
            if n_full:
                parts.append(n_full * lv.radius)
            open_mask = (~full) & (d < q.radius + enl)
            opened = active[open_mask]
            if opened.size == 0:
                active = opened
                break
            ratio = sched.ratio(k)
            active = (opened[:, None] * ratio
                      + np.arange(ratio, dtype=np.int64)[None, :]).ravel()
        if active.size:
            lv = self.tree.levels[self.level]
            d = np.abs(q.center - lv.centers[active])
            lens = _lens_vec(d, lv.radius, q.radius)
            parts.append(math.fsum(lens) / lv.radius)
        return math.fsum(parts)

    def total_mass(self) -> float:
        return self.mass_on_disc(Disc(0j, 3.0))

    def growth_scan(self, num_samples: int, seed: int) -> GrowthReport:
        """Sample points adjacent to the support and radii log-uniform in
        [r_n, 2]; report the ratios mass/r and their maximum."""
        if num_samples <= 0:
            raise ValueError("num_samples must be positive")
        rng = np.random.default_rng(seed)
        n_nodes = len(self.centers)
        samples = []
        for _ in range(num_samples):
            j = int(rng.integers(n_nodes))
            c = complex(self.centers[j])
            rho = self.radius * math.sqrt(rng.uniform()) * 2.0
            ang = rng.uniform(-math.pi, math.pi)
            z = c + rho * complex(math.cos(ang), math.sin(ang))
            r = math.exp(rng.uniform(math.log(self.radius), math.log(2.0)))
            mass = self.mass_on_disc(Disc(z, r))
            samples.append((z, r, mass, mass / r))
        max_ratio = max(s[3] for s in samples)
        return GrowthReport(samples, max_ratio)

    # -- T(1) evaluators --------------------------------------------------

    def t1_exact(self, z: complex) -> IntegralResult:
        """Sum of closed-form disc integrals over every core disc, in
        fixed preorder with compensated accumulation."""
        value, abssum, mind = _accel.disc_sum(
            self._cre, self._cim, self.radius, z.real, z.imag
        )
        self._check_off_support(mind)
        r = self.radius
        return IntegralResult(value / r, 4 * _EPS * abssum / r, "closed_form")

    def _drifts(self) -> list[complex]:
        """Per level k, the offset of a level-k subtree's center of mass
        from the node center (identical for all nodes of a level).

        The packed-square selection is not exactly symmetric, so the
        mean child offset is a tiny nonzero vector; it telescopes down
        the levels.
        """
        if not hasattr(self, "_drift_cache"):
            from .construction import _pack_offsets

            sched = self.tree.schedule
            means = [complex(np.mean(_pack_offsets(sched.ratio(k))))
                     * sched.radius(k) for k in range(self.level)]
            drifts = []
            for k in range(self.level + 1):
                drifts.append(sum(means[k:], 0j))
            self._drift_cache = drifts
        return self._drift_cache

    @staticmethod
    def _cluster_bounds(D: np.ndarray, rho: float, mass: float) -> np.ndarray:
        """Error of swapping two equal-mass, equal-first-moment measures
        supported in a radius-rho ball at distance D: second-order
        Taylor remainder of K about the common center of mass,
        2*mass*x^2*(5-3x) / (D*(1-x)^2) with x = rho/D."""
        with np.errstate(divide="ignore", invalid="ignore"):
            x = rho / D
            b = np.where(
                x < 0.5,
                2.0 * mass * x * x * (5.0 - 3.0 * x) / (D * (1.0 - x) ** 2),
                np.inf,
            )
        return b

    def t1_fast(self, z: complex, tol: float = 1e-6,
                with_stats: bool = False):
        """Treecode evaluation of T(1)(z) within tol of t1_exact.

        A far subtree (total mass r_k) is replaced by a single core-size
        disc carrying the same mass, centered at the subtree's center of
        mass so first moments match exactly; the incurred error per
        cluster is the second-order kernel Taylor remainder.  Clusters
        are accepted cheapest-first while the accumulated bounds fit the
        tolerance, so the total error stays within tol.  Remaining
        leaves are summed exactly.
        """
        if tol <= 0:
            raise ValueError("tol must be positive")
        sched = self.tree.schedule
        drifts = self._drifts()
        level_sums: list[float] = []
        level_sums_im: list[float] = []
        spent = 0.0
        budget = tol
        visited = 0
        active = np.array([0], dtype=np.int64)
        for k in range(self.level):
            lv = self.tree.levels[k]
            visited += active.size
            z0 = lv.centers[active] + drifts[k]
            w = z - z0
            D = np.abs(w)
            rho = lv.enlarged_radius + abs(drifts[k])
            bounds = self._cluster_bounds(D, rho, lv.radius)
            # cheapest clusters first; keep half the remaining budget for
            # deeper levels unless the children are already leaves
            share = budget - spent
            if k < self.level - 1:
                share *= 0.5
            order = np.lexsort((active, bounds))
            cum = np.cumsum(bounds[order])
            n_acc = int(np.searchsorted(cum, share, side="right"))
            accept = np.zeros(len(active), dtype=bool)
            accept[order[:n_acc]] = True
            accept &= np.isfinite(bounds)
            if np.any(accept):
                terms = _exterior_terms(w[accept], lv.radius) / lv.radius
                level_sums.append(math.fsum(terms.real))
                level_sums_im.append(math.fsum(terms.imag))
                spent += float(np.sum(bounds[accept]))
            opened = active[~accept]
            if opened.size == 0:
                active = opened
                break
            ratio = sched.ratio(k)
            active = (opened[:, None] * ratio
                      + np.arange(ratio, dtype=np.int64)[None, :]).ravel()
        err_budget = spent
        if active.size:
            lv = self.tree.levels[self.level]
            visited += active.size
            value, abssum, mind = _accel.disc_sum(
                np.ascontiguousarray(self._cre[active]),
                np.ascontiguousarray(self._cim[active]),
                lv.radius, z.real, z.imag,
            )
            self._check_off_support(mind)
            level_sums.append(value.real / lv.radius)
            level_sums_im.append(value.imag / lv.radius)
            err_budget += 4 * _EPS * abssum / lv.radius
        value = complex(math.fsum(level_sums), math.fsum(level_sums_im))
        result = IntegralResult(value, err_budget, "closed_form")
        if with_stats:
            return result, visited
        return result

    def t1_restricted(self, z: complex, node_level: int, node_index: int
                      ) -> IntegralResult:
        """t1_exact summed only over the core discs descending from one
        node (used for per-scale diagnostics)."""
        sl = self.tree.descendant_slice(node_level, node_index, self.level)
        value, abssum, mind = _accel.disc_sum(
            np.ascontiguousarray(self._cre[sl]),
            np.ascontiguousarray(self._cim[sl]),
            self.radius, z.real, z.imag,
        )
        self._check_off_support(mind)
        r = self.radius
        return IntegralResult(value / r, 4 * _EPS * abssum / r, "closed_form")

    # -- annuli and truncations -------------------------------------------

    def _shell_integral(self, z: complex, t_lo: float, t_hi: float,
                        restrict: slice | None = None) -> IntegralResult:
        """Integral of K(z - xi) d(measure) over t_lo <= |z - xi| <= t_hi.

        Discs fully inside the shell use the exterior closed form; discs
        crossing either shell circle use the radial reduction.  The shell
        excludes the singularity whenever t_lo > 0.
        """
        r = self.radius
        lo_idx = 0 if restrict is None else restrict.start
        if restrict is None:
            cand = np.array(sorted(self._kdtree().query_ball_point(
                [z.real, z.imag], t_hi + r)), dtype=np.int64)
            centers = self.centers
        else:
            centers = self.centers[restrict]
            d_all = np.abs(z - centers)
            cand = np.flatnonzero(d_all <= t_hi + r)
        if cand.size == 0:
            return IntegralResult(0j, 0.0, "radial_reduction")
        c = centers[cand]
        d = np.abs(z - c)
        keep = d >= t_lo - r
        c, d = c[keep], d[keep]
        inside = (d - r >= t_lo) & (d + r <= t_hi)
        crossing = ~inside
        total_re: list[float] = []
        total_im: list[float] = []
        err = 0.0
        if np.any(inside):
            terms = _exterior_terms(z - c[inside], r) / r
            total_re.append(math.fsum(terms.real))
            total_im.append(math.fsum(terms.imag))
            err += 4 * _EPS * float(np.sum(np.abs(terms)))
        if np.any(crossing):
            val, e = _batch_clipped_radial(z, t_lo, t_hi, c[crossing], r)
            total_re.append(val.real / r)
            total_im.append(val.imag / r)
            err += e / r
        value = complex(math.fsum(total_re), math.fsum(total_im))
        return IntegralResult(value, err, "radial_reduction")

    def annulus_t(self, z: complex, r: float,
                  restrict: slice | None = None) -> IntegralResult:
        """Integral of K(z - xi) d(measure) over the annulus A(z, r).

        z may lie on the support boundary: the annulus keeps the
        singularity at distance >= r/2.  `restrict` limits the sum to a
        contiguous block of core discs (a node's descendants).
        """
        if r <= 0:
            raise ValueError("annulus radius must be positive")
        return self._shell_integral(z, r / 2, r, restrict)

    def truncated_t1(self, z: complex, rho: float) -> IntegralResult:
        """Integral of K(z - xi) d(measure) over |z - xi| > rho."""
        if rho <= 0:
            raise ValueError("truncation radius must be positive")
        r = self.radius
        d = np.hypot(self._cre - z.real, self._cim - z.imag)
        t_hi = float(np.max(d)) + 2 * r
        return self._shell_integral(z, rho, t_hi)
