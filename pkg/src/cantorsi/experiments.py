"""Runnable verification experiments with explicit pass criteria.

Each experiment returns an ExperimentReport: a parameter block, tabular
records (one row per checked quantity, carrying enough data to
recompute its pass flag), and a summary with the measured constants
(ctilde, C0, sup|T1|, c0, ...).  Reports serialize to CSV and JSON with
deterministic formatting, so identical configs produce byte-identical
output.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .construction import (
    ConstructionTree,
    _pack_offsets,
    build_hierarchy,
    locate,
)
from .geometry import AnnulusCap, Disc
from .kernel import (
    adaptive_quadrature,
    annulus_cap_integral,
    disc_integral,
)
from .measure import LevelMeasure, OnSupportError

__all__ = [
    "CSV_COLUMNS",
    "ExperimentReport",
    "check_reflectionless",
    "compute_ctilde",
    "boundedness_sweep",
    "pv_failure",
    "density_decay",
    "CTILDE",
]

# frozen golden value of the annulus misbalance constant
# (2/(3 pi)) * integral_{1/2}^{1} (1 - t^2) sqrt(1 - t^2/4) dt,
# confirmed against the 2-D grid oracle; see compute_ctilde
CTILDE = 0.041519029470838

CSV_COLUMNS = [
    "experiment", "level", "z.re", "z.im", "radius",
    "value.re", "value.im", "bound", "pass",
]


def _row(experiment: str, level: int, z: complex, radius: float,
         value: complex, bound: float, ok: bool) -> dict:
    return {
        "experiment": experiment,
        "level": level,
        "z.re": float(z.real),
        "z.im": float(z.imag),
        "radius": float(radius),
        "value.re": float(value.real),
        "value.im": float(value.imag),
        "bound": float(bound),
        "pass": bool(ok),
    }


@dataclass
class ExperimentReport:
    """Outcome of one experiment: parameters, rows, measured constants."""

    name: str
    parameters: dict
    records: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r["pass"] for r in self.records) and self.summary.get(
            "passed", True)

    # -- serialization ----------------------------------------------------

    def csv_text(self) -> str:
        out = io.StringIO()
        out.write(",".join(CSV_COLUMNS) + "\n")
        for r in self.records:
            cells = []
            for col in CSV_COLUMNS:
                v = r[col]
                if isinstance(v, bool):
                    cells.append("true" if v else "false")
                elif isinstance(v, float):
                    cells.append(repr(v))
                else:
                    cells.append(str(v))
            out.write(",".join(cells) + "\n")
        return out.getvalue()

    def json_text(self) -> str:
        payload = {
            "name": self.name,
            "parameters": self.parameters,
            "summary": self.summary,
            "passed": self.passed,
            "record_count": len(self.records),
        }
        def default(o):
            if isinstance(o, (np.floating, np.integer)):
                return o.item()
            if isinstance(o, complex):
                return [o.real, o.imag]
            raise TypeError(f"not JSON serializable: {type(o)!r}")

        return json.dumps(payload, sort_keys=True, indent=2,
                          default=default) + "\n"

    def write(self, out_dir, fmt: str = "csv") -> list[str]:
        """Write report files into out_dir; returns the paths written."""
        import pathlib

        out = pathlib.Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = []
        if fmt in ("csv", "both"):
            p = out / f"{self.name}.csv"
            p.write_text(self.csv_text())
            paths.append(str(p))
        p = out / f"{self.name}.json"
        p.write_text(self.json_text())
        paths.append(str(p))
        return paths


# -- reflectionless ---------------------------------------------------------


def check_reflectionless(trials: int = 100, seed: int = 0,
                         tol: float = 1e-8) -> ExperimentReport:
    """Random discs with interior points: the closed form returns
    exactly zero and the quadrature oracle magnitude stays below tol.
    Exterior control points must match the nonzero closed form."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(seed)
    rep = ExperimentReport(
        "check-reflectionless",
        {"trials": trials, "seed": seed, "tol": tol},
    )
    worst = 0.0
    for _ in range(trials):
        center = complex(*rng.uniform(-2, 2, 2))
        radius = math.exp(rng.uniform(math.log(0.1), math.log(2.0)))
        d = Disc(center, radius)
        ang = rng.uniform(-math.pi, math.pi)
        omega = center + radius * math.sqrt(rng.uniform()) * \
            complex(math.cos(ang), math.sin(ang))
        closed = disc_integral(d, omega)
        orac = adaptive_quadrature(d, omega, tol)
        ok = closed.value == 0 and abs(orac.value) <= tol
        worst = max(worst, abs(orac.value))
        rep.records.append(_row("check-reflectionless", 0, omega, radius,
                                orac.value, tol, ok))
        # control: a point outside the disc gives the nonzero closed form
        out = center + radius * (1.2 + rng.uniform()) * \
            complex(math.cos(ang), math.sin(ang))
        c2 = disc_integral(d, out)
        o2 = adaptive_quadrature(d, out, tol)
        ok2 = abs(c2.value) > tol and abs(c2.value - o2.value) <= 10 * tol
        rep.records.append(_row("reflectionless-control", 0, out, radius,
                                c2.value, 10 * tol, ok2))
    rep.summary = {
        "trials": trials,
        "max_quadrature_magnitude": worst,
        "passed": all(r["pass"] for r in rep.records),
    }
    return rep


# -- the misbalance constant ------------------------------------------------


def _region2_grid(n: int, sub: int = 8) -> float:
    """2-D midpoint-grid value of the imaginary part of the kernel
    integral over region II = {1/2 <= |xi| <= 1, |xi - i| <= 1,
    arg xi <= pi/6}, with subsampled boundary cells.  Independent of the
    radial reduction."""
    x0, x1, y0, y1 = 0.40, 1.0, 0.0, 0.52
    hx = (x1 - x0) / n
    hy = (y1 - y0) / n

    def member(x, y):
        t2 = x * x + y * y
        inside = (t2 >= 0.25) & (t2 <= 1.0)
        inside &= x * x + (y - 1.0) ** 2 <= 1.0
        inside &= y <= x * math.tan(math.pi / 6)
        return inside

    def integrand(x, y):
        # Im K(-xi) for xi = x + iy: K(t e^{i th}) = e^{-3 i th}/t
        t2 = x * x + y * y
        th = np.arctan2(y, x)
        return np.sin(3 * th) / np.sqrt(t2)

    xs = x0 + (np.arange(n) + 0.5) * hx
    ys = y0 + (np.arange(n) + 0.5) * hy
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    inside = member(X, Y)
    # cells whose 4 corners disagree straddle the boundary
    cx = x0 + np.arange(n + 1) * hx
    cy = y0 + np.arange(n + 1) * hy
    CX, CY = np.meshgrid(cx, cy, indexing="ij")
    corner = member(CX, CY)
    mixed = (corner[:-1, :-1] != corner[1:, 1:]) \
        | (corner[:-1, :-1] != corner[1:, :-1]) \
        | (corner[:-1, :-1] != corner[:-1, 1:])
    bulk = inside & ~mixed
    total = float(np.sum(integrand(X[bulk], Y[bulk]))) * hx * hy
    # subsample mixed cells
    mi, mj = np.nonzero(mixed)
    if mi.size:
        fx = (np.arange(sub) + 0.5) / sub
        sx = xs[mi][:, None, None] + (fx[None, :, None] - 0.5) * hx
        sy = ys[mj][:, None, None] + (fx[None, None, :] - 0.5) * hy
        m = member(sx, sy)
        vals = np.where(m, integrand(sx, sy), 0.0)
        total += float(np.sum(vals)) * hx * hy / (sub * sub)
    return total / math.pi


def compute_ctilde(tol: float = 1e-10, grid: int = 1600) -> ExperimentReport:
    """The misbalance constant ctilde for the normalized configuration:
    annulus A(0,1) clipped by B(i,1), singularity at 0.

    Three routes must agree: the 1-D radial reduction of region II, the
    full annulus-cap integral (whose real part vanishes by symmetry and
    whose imaginary part equals ctilde), and an independent 2-D grid
    oracle.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    rep = ExperimentReport("compute-ctilde", {"tol": tol, "grid": grid})

    # region II radial reduction: (2/(3 pi)) int_{1/2}^1 (1-t^2) sqrt(1-t^2/4)
    def f(t):
        return (1.0 - t * t) * math.sqrt(1.0 - t * t / 4.0)

    val, err = quad(f, 0.5, 1.0, epsabs=tol, epsrel=tol)
    c_radial = 2.0 / (3.0 * math.pi) * val

    cap = AnnulusCap(0j, 1.0, Disc(1j, 1.0))
    full = annulus_cap_integral(cap, tol=tol)
    c_grid = 2.0 * _region2_grid(grid)

    # region III equals region II by the mirror symmetry x -> -x of the
    # configuration; check it through the full integral instead of a
    # second grid: Im(full) = II + III and Re(full) = 0 exactly.
    rows = [
        ("ctilde-radial", c_radial, abs(c_radial - CTILDE), 1e-6),
        ("ctilde-cap-im", full.value.imag,
         abs(full.value.imag - c_radial), max(1e-8, 10 * full.error_bound)),
        ("ctilde-cap-re", full.value.real, abs(full.value.real), 1e-10),
        ("ctilde-grid", c_grid, abs(c_grid - c_radial), 1e-4),
    ]
    for name, value, dev, bound in rows:
        rep.records.append(_row(name, 0, 0j, 1.0, complex(value, 0.0),
                                bound, dev <= bound))
    # region I: the imaginary part over arg in [pi/6, 5pi/6] vanishes;
    # its angular integral is exactly [-cos(3 th)/3] between cos(pi/2)
    # and cos(5 pi/2), both zero -- assert the numeric evaluation
    region1 = (math.cos(3 * 5 * math.pi / 6) - math.cos(3 * math.pi / 6)) / 3.0
    rep.records.append(_row("ctilde-region1-im", 0, 0j, 1.0,
                            complex(region1, 0.0), 1e-15,
                            abs(region1) <= 1e-15))
    rep.summary = {
        "ctilde": c_radial,
        "quad_error": err,
        "cap_value_im": full.value.imag,
        "grid_value": c_grid,
        "grid_agreement": abs(c_grid - c_radial),
        "golden": CTILDE,
        "passed": all(r["pass"] for r in rep.records),
    }
    return rep


# -- boundedness ------------------------------------------------------------


def _stratified_points(tree: ConstructionTree, measure: LevelMeasure,
                       per_stratum: int, seed: int) -> list[tuple[str, int, complex]]:
    """Off-support sample points: hole points at every scale n <= level,
    points hugging square boundaries, and a far-field band."""
    rng = np.random.default_rng(seed)
    m = measure.level
    pts: list[tuple[str, int, complex]] = []

    def off_support(z: complex) -> bool:
        return measure.support_distance(z) > 1e-9 * measure.radius

    for n in range(1, m + 1):
        par = tree.levels[n - 1]
        count = 0
        guard = 0
        while count < per_stratum and guard < 200 * per_stratum:
            guard += 1
            j = int(rng.integers(len(par.centers)))
            ang = rng.uniform(-math.pi, math.pi)
            z = complex(par.centers[j]) + par.enlarged_radius * \
                math.sqrt(rng.uniform()) * complex(math.cos(ang), math.sin(ang))
            if locate(tree, z, n, "square") is None and off_support(z):
                pts.append((f"hole-{n}", n, z))
                count += 1

        lv = tree.levels[n]
        sep = tree.schedule.separation(n)
        count = 0
        guard = 0
        while count < per_stratum and guard < 200 * per_stratum:
            guard += 1
            j = int(rng.integers(len(lv.centers)))
            c = complex(lv.centers[j])
            side = lv.square_side
            edge = rng.integers(4)
            u = rng.uniform(-0.5, 0.5)
            delta = rng.uniform(0.02, 1.0) * sep * 0.2
            if edge == 0:
                z = c + complex(side / 2 + delta, u * side)
            elif edge == 1:
                z = c + complex(-side / 2 - delta, u * side)
            elif edge == 2:
                z = c + complex(u * side, side / 2 + delta)
            else:
                z = c + complex(u * side, -side / 2 - delta)
            if locate(tree, z, n, "square") is None and off_support(z):
                pts.append((f"moat-{n}", n, z))
                count += 1

    for _ in range(per_stratum):
        ang = rng.uniform(-math.pi, math.pi)
        rad = rng.uniform(4.0, 8.0)
        pts.append(("far", 0, rad * complex(math.cos(ang), math.sin(ang))))
    return pts


def boundedness_sweep(tree: ConstructionTree,
                      levels: tuple[int, ...] | None = None,
                      per_stratum: int = 150,
                      telescope_samples: int = 40,
                      seed: int = 0,
                      tol: float = 1e-6) -> ExperimentReport:
    """Sup of |T(1)| over a stratified off-support grid, per measure
    level, with the fast and exact evaluators cross-checked on every
    point and per-scale telescoped contributions on a subsample.

    The checkable surrogate for uniform boundedness: the sup changes by
    a factor of at most 2 between consecutive levels, the far field
    obeys |T1| <= 2/(|z|-2), and each per-scale contribution is
    dominated by measured_C * (sqrt(s_n) + sqrt(eps/r_{n-1})).
    """
    if levels is None:
        levels = (tree.depth - 1, tree.depth) if tree.depth >= 2 \
            else (tree.depth,)
    rep = ExperimentReport(
        "boundedness",
        {"levels": list(levels), "per_stratum": per_stratum,
         "telescope_samples": telescope_samples, "seed": seed, "tol": tol},
    )
    sched = tree.schedule
    sups: dict[int, float] = {}
    max_diff = 0.0
    scale_ratios: list[float] = []
    for m in levels:
        mu = LevelMeasure(tree, m)
        pts = _stratified_points(tree, mu, per_stratum, seed)
        stratum_sup: dict[str, float] = {}
        for idx, (stratum, n, z) in enumerate(pts):
            fast = mu.t1_fast(z, tol)
            exact = mu.t1_exact(z)
            diff = abs(fast.value - exact.value)
            max_diff = max(max_diff, diff)
            mag = abs(exact.value)
            stratum_sup[stratum] = max(stratum_sup.get(stratum, 0.0), mag)
            if stratum == "far":
                bound = 2.0 / (abs(z) - 2.0)
                ok = mag <= bound and diff <= tol
            else:
                bound = tol
                ok = diff <= tol
            rep.records.append(_row(f"boundedness-{stratum}-m{m}", n, z,
                                    0.0, exact.value, bound, ok))
            if idx < telescope_samples and stratum != "far":
                eps = mu.support_distance(z)
                _, leaf = mu._kdtree().query([z.real, z.imag])
                contribs = _telescope(tree, mu, z, int(leaf))
                for k, c in enumerate(contribs, start=1):
                    prof = math.sqrt(sched.s(k)) + math.sqrt(
                        max(eps, 0.0) / sched.radius(k - 1))
                    scale_ratios.append(abs(c) / prof)
                    rep.records.append(_row(
                        f"telescope-m{m}-scale{k}", k, z,
                        eps, c, prof, True))
        sups[m] = max(stratum_sup.values())
        rep.summary[f"sup_level_{m}"] = sups[m]
        for s, v in sorted(stratum_sup.items()):
            rep.summary[f"sup_{s}_m{m}"] = v
    measured_c = max(scale_ratios) if scale_ratios else 0.0
    stable = True
    lv = sorted(sups)
    for a, b in zip(lv, lv[1:]):
        ratio = sups[b] / sups[a]
        rep.summary[f"sup_ratio_{a}_{b}"] = ratio
        stable &= 0.5 <= ratio <= 2.0
    rep.summary.update({
        "max_fast_exact_diff": max_diff,
        "measured_C": measured_c,
        "sup_stable": stable,
        "passed": stable and max_diff <= tol
        and all(r["pass"] for r in rep.records),
    })
    return rep


def _telescope(tree: ConstructionTree, mu: LevelMeasure, z: complex,
               leaf: int) -> list[complex]:
    """Per-scale contributions of T(1)(z): the integral over
    B^(n-1)(z*) minus the integral over B^(n)(z*), where z* is the
    nearest support point and B^(k)(z*) the level-k disc above it."""
    sched = tree.schedule
    idx = [leaf]
    for k in range(mu.level - 1, -1, -1):
        idx.append(idx[-1] // sched.ratio(k))
    idx.reverse()  # idx[k] = ancestor index at level k
    vals = [mu.t1_restricted(z, k, idx[k]).value
            for k in range(mu.level + 1)]
    return [vals[k - 1] - vals[k] for k in range(1, mu.level + 1)]


# -- principal-value failure ------------------------------------------------


def _count_meeting(offsets: np.ndarray, h: float, radius: float) -> int:
    """Number of packed lattice squares (side h, centers `offsets`)
    whose closed square meets the closed disc B(0, radius)."""
    nx = np.maximum(np.abs(offsets.real) - h / 2, 0.0)
    ny = np.maximum(np.abs(offsets.imag) - h / 2, 0.0)
    return int(np.count_nonzero(nx * nx + ny * ny <= radius * radius))


def pv_failure(tree: ConstructionTree, trials: int = 100, seed: int = 0,
               c0: float = 0.01, counting_ratio: int = 2 ** 22,
               additivity_samples: int = 12) -> ExperimentReport:
    """Witness the failure of the principal value.

    (1) at points within c0*r_n of a level-n enlarged-disc boundary the
    annulus integral has magnitude >= ctilde/4; (2) truncated T(1)
    values at rho = r_n and r_n/2 differ by exactly that annulus
    integral (additivity); (3) the annulus integral against the deep
    measure stays within measured_C * s_{n+1} of the level-n
    Lebesgue-model integral, whose translate is Lipschitz with norm
    about 1/r_n; (4) counting: the fraction of next-level squares
    meeting the shrunken disc (1-c0)B yields a measure-decay factor
    <= 1 - c0/2 once the enlargement s is below c0 (large ratio).
    """
    if tree.depth < 2:
        raise ValueError("pv_failure needs depth >= 2")
    rng = np.random.default_rng(seed)
    rep = ExperimentReport(
        "pv-failure",
        {"trials": trials, "seed": seed, "c0": c0,
         "counting_ratio": counting_ratio,
         "additivity_samples": additivity_samples},
    )
    mu = LevelMeasure(tree)
    sched = tree.schedule
    lower = CTILDE / 4.0
    per_level = max(1, trials // 2)
    min_annulus = math.inf
    claim_ratios: list[float] = []
    add_done = 0
    for n in (1, 2):
        lv = tree.levels[n]
        r_n = lv.radius
        for _ in range(per_level):
            j = int(rng.integers(len(lv.centers)))
            c = complex(lv.centers[j])
            ang = rng.uniform(-math.pi, math.pi)
            offs = rng.uniform(-c0, c0) * r_n
            z = c + (lv.enlarged_radius + offs) * complex(
                math.cos(ang), math.sin(ang))
            a = mu.annulus_t(z, r_n)
            mag = abs(a.value)
            min_annulus = min(min_annulus, mag)
            rep.records.append(_row(f"annulus-lower-n{n}", n, z, r_n,
                                    a.value, lower, mag >= lower))
            if add_done < additivity_samples:
                t_half = mu.truncated_t1(z, r_n / 2)
                t_full = mu.truncated_t1(z, r_n)
                gap = abs((t_half.value - t_full.value) - a.value)
                tol_add = 1e-10
                rep.records.append(_row(f"truncation-additivity-n{n}", n, z,
                                        r_n, t_half.value - t_full.value,
                                        tol_add, gap <= tol_add))
                add_done += 1

            # annulus comparison: deep measure vs level-n Lebesgue model
            # restricted to this node's disc
            sl = tree.descendant_slice(n, j, mu.level)
            deep = mu.annulus_t(z, r_n, restrict=sl)
            model = annulus_cap_integral(AnnulusCap(z, r_n, Disc(c, r_n)))
            diff = abs(deep.value - model.value / r_n)
            s_next = sched.s(n + 1)
            claim_ratios.append(diff / s_next)
            rep.records.append(_row(f"annulus-comparison-n{n}", n, z, r_n,
                                    deep.value - model.value / r_n,
                                    10.0 * s_next, diff <= 10.0 * s_next))

    # Lipschitz sanity of the Lebesgue-model annulus integral in z
    lip_max = 0.0
    for n in (1, 2):
        lv = tree.levels[n]
        r_n = lv.radius
        for _ in range(4):
            j = int(rng.integers(len(lv.centers)))
            c = complex(lv.centers[j])
            ang = rng.uniform(-math.pi, math.pi)
            z = c + lv.enlarged_radius * complex(math.cos(ang), math.sin(ang))
            h = 0.05 * r_n
            for step in (h, 1j * h):
                g0 = annulus_cap_integral(AnnulusCap(z, r_n, Disc(c, r_n)))
                g1 = annulus_cap_integral(
                    AnnulusCap(z + step, r_n, Disc(c, r_n)))
                slope = abs(g1.value - g0.value) / (r_n * abs(step))
                lip_max = max(lip_max, slope * r_n)
                rep.records.append(_row(f"lipschitz-n{n}", n, z, r_n,
                                        complex(slope * r_n, 0.0), 10.0,
                                        slope * r_n <= 10.0))

    # counting / measure decay at a ratio large enough that the
    # enlargement s = 4/sqrt(ratio) is below c0 (the asymptotic regime)
    q = counting_ratio
    offsets = _pack_offsets(q)
    h = math.sqrt(math.pi / q)
    s = 4.0 / math.sqrt(q)
    count = _count_meeting(offsets, h, (1.0 - c0) * (1.0 + s))
    factor = count / q
    bound_count = (1.0 - c0) * q + 10.0 * math.sqrt(q)
    rep.records.append(_row("counting-decay", 0, 0j, (1.0 - c0) * (1.0 + s),
                            complex(count, 0.0), bound_count,
                            count <= bound_count and factor <= 1.0 - c0 / 2))
    # diagnostic at the construction's own ratio: the enlargement there
    # exceeds c0, so the shrunken disc still meets every square
    q0 = sched.ratio(0)
    off0 = _pack_offsets(q0)
    h0 = math.sqrt(math.pi / q0)
    s0 = 4.0 / math.sqrt(q0)
    count0 = _count_meeting(off0, h0, (1.0 - c0) * (1.0 + s0))

    rep.summary = {
        "min_annulus_magnitude": min_annulus,
        "annulus_lower_bound": lower,
        "measured_C_claim": max(claim_ratios) if claim_ratios else 0.0,
        "measured_lipschitz": lip_max,
        "decay_factor": factor,
        "decay_factor_bound": 1.0 - c0 / 2,
        "counting_ratio": q,
        "schedule_ratio_diagnostic": {
            "ratio": q0, "count": count0, "factor": count0 / q0},
        "passed": all(r["pass"] for r in rep.records),
    }
    return rep


# -- density decay ----------------------------------------------------------


def density_decay(tree: ConstructionTree, samples: int = 100,
                  seed: int = 0) -> ExperimentReport:
    """Covering-density surrogate for pure unrectifiability.

    At the scale rho_n = (1/4) sqrt(r_{n-1} r_n), a ball around any
    point meets at most one level-n enlarged disc (a consequence of the
    separation property, checked exactly through the minimum gap), and
    the density mass/rho_n is at most 8 sqrt(r_n/r_{n-1}) -- a bound
    that decays whenever the ratio schedule decreases.
    """
    rng = np.random.default_rng(seed)
    rep = ExperimentReport("density-decay",
                           {"samples": samples, "seed": seed})
    mu = LevelMeasure(tree)
    sched = tree.schedule
    max_density: list[float] = []
    from scipy.spatial import cKDTree

    for n in range(1, tree.depth + 1):
        lv = tree.levels[n]
        rho = 0.25 * math.sqrt(sched.radius(n - 1) * sched.radius(n))
        bound = 8.0 * math.sqrt(sched.radius(n) / sched.radius(n - 1))

        # at-most-one-disc: two discs within one ball would be
        # 2*rho = (1/2) sqrt(r_{n-1} r_n) apart, below the separation
        # threshold; verify through the actual minimum center distance
        pts = np.column_stack([lv.centers.real, lv.centers.imag])
        kd = cKDTree(pts)
        k = min(len(pts), 2)
        if k == 2:
            pick = rng.choice(len(pts), size=min(20000, len(pts)),
                              replace=False)
            pick.sort()
            dist, _ = kd.query(pts[pick], k=2)
            min_gap = float(dist[:, 1].min()) - 2 * lv.enlarged_radius
        else:
            min_gap = math.inf
        ok_one = min_gap > 2 * rho
        rep.records.append(_row(f"at-most-one-disc-n{n}", n, 0j, rho,
                                complex(min_gap, 0.0), 2 * rho, ok_one))

        # density surrogate at disc centers and adjacent points
        dens = 0.0
        for _ in range(samples):
            j = int(rng.integers(len(lv.centers)))
            c = complex(lv.centers[j])
            ang = rng.uniform(-math.pi, math.pi)
            z = c + rng.uniform(0.0, 2.0) * lv.radius * complex(
                math.cos(ang), math.sin(ang))
            mass = mu.mass_on_disc(Disc(z, rho))
            dens = max(dens, mass / rho)
        # the center of a disc realizes the extremal density exactly
        c = complex(lv.centers[0])
        dens = max(dens, mu.mass_on_disc(Disc(c, rho)) / rho)
        max_density.append(dens)
        rep.records.append(_row(f"density-n{n}", n, c, rho,
                                complex(dens, 0.0), bound, dens <= bound))

    strict = all(b < a * (1 - 1e-9) for a, b in
                 zip(max_density, max_density[1:]))
    rep.summary = {
        "max_density_per_level": max_density,
        "strictly_decreasing": strict,
        "passed": all(r["pass"] for r in rep.records),
    }
    return rep
