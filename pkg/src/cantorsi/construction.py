"""Square packing inside a disc and the recursive disc/square hierarchy.

Level n consists of 1/r_n core discs of radius r_n.  Each core disc is
tiled with r_n/r_{n+1} lattice squares of side sqrt(pi r_n r_{n+1}); the
square centers become the next level's core discs, and the enlarged
discs (factor 1 + s_{n+1}, s_{n+1} = 4 sqrt(r_{n+1}/r_n)) make up the
covering sets E^(n).

Counts are exact (integer schedule arithmetic); positions are floats.
All nodes of a level share the same radius, so a level is stored as one
contiguous array of centers.  Children of node j are the contiguous
index block [j*ratio, (j+1)*ratio), hence descendant ranges at any
deeper level are contiguous as well.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import Disc, Square

__all__ = [
    "ScheduleError",
    "RadiiSchedule",
    "pack_squares",
    "symmetric_difference_area",
    "ConstructionTree",
    "TreeNode",
    "build_hierarchy",
    "verify_separation",
    "locate",
]


class ScheduleError(ValueError):
    """A radii schedule violating the construction's constraints."""


@dataclass(frozen=True)
class RadiiSchedule:
    """Radii r_0 = 1 > r_1 > ... encoded by the successive integer
    ratios r_n / r_{n+1}.

    Each ratio must exceed 100 (strictly, r_{n+1} < r_n / 100).  The
    enlargement factor of the deepest level needs one ratio beyond the
    built depth; `continuation_ratio` supplies it and defaults to the
    last ratio of the schedule.
    """

    ratios: tuple[int, ...]
    continuation_ratio: int | None = None

    def __post_init__(self):
        if not self.ratios:
            raise ScheduleError("schedule needs at least one ratio")
        for k, q in enumerate(self.ratios):
            if not isinstance(q, int) or isinstance(q, bool):
                raise ScheduleError(
                    f"ratio r_{k}/r_{k + 1} = {q!r} is not an integer"
                )
            if q <= 100:
                raise ScheduleError(
                    f"ratio r_{k}/r_{k + 1} = {q} violates r_j < r_(j-1)/100"
                )
        cont = self.continuation_ratio
        if cont is None:
            object.__setattr__(self, "continuation_ratio", self.ratios[-1])
        elif not isinstance(cont, int) or cont <= 100:
            raise ScheduleError(f"invalid continuation ratio {cont!r}")

    @property
    def depth(self) -> int:
        return len(self.ratios)

    def ratio(self, n: int) -> int:
        """r_n / r_{n+1}; the continuation ratio past the schedule end."""
        if n < len(self.ratios):
            return self.ratios[n]
        return self.continuation_ratio  # type: ignore[return-value]

    def inv_radius(self, n: int) -> int:
        """1/r_n, exact."""
        out = 1
        for q in self.ratios[:n]:
            out *= q
        return out

    def radius(self, n: int) -> float:
        return 1.0 / self.inv_radius(n)

    def s(self, n: int) -> float:
        """s_n = 4 sqrt(r_n / r_{n-1}), defined for n >= 1."""
        if n < 1:
            raise ValueError("s_n is defined for n >= 1")
        return 4.0 / math.sqrt(self.ratio(n - 1))

    def enlargement(self, n: int) -> float:
        """1 + s_{n+1}, the core-to-enlarged disc factor at level n."""
        return 1.0 + self.s(n + 1)

    def square_side(self, n: int) -> float:
        """Side sqrt(pi r_{n-1} r_n) of the level-n squares, n >= 1."""
        if n < 1:
            raise ValueError("squares exist from level 1")
        return math.sqrt(math.pi * self.radius(n - 1) * self.radius(n))

    def separation(self, n: int) -> float:
        """The scale (1/2) sqrt(r_{n-1} r_n) of properties (b), (c)."""
        if n < 1:
            raise ValueError("separation scale is defined for n >= 1")
        return 0.5 * math.sqrt(self.radius(n - 1) * self.radius(n))


def _pack_offsets(ratio: int) -> np.ndarray:
    """Square centers for packing the unit disc with `ratio` lattice
    squares of side sqrt(pi/ratio), as a complex array.

    All lattice squares meeting B(0,1) are candidates; the `ratio`
    squares whose centers are closest to the origin are kept, ties
    broken lexicographically by (re, im).
    """
    h = math.sqrt(math.pi / ratio)
    kmax = int(math.ceil(1.0 / h)) + 1
    idx = np.arange(-kmax, kmax)
    ii, jj = np.meshgrid(idx, idx, indexing="ij")
    x = (ii.ravel() + 0.5) * h
    y = (jj.ravel() + 0.5) * h
    # closest point of each cell to the origin
    nx = np.clip(0.0, x - h / 2, x + h / 2)
    ny = np.clip(0.0, y - h / 2, y + h / 2)
    meets = nx * nx + ny * ny <= 1.0
    x, y = x[meets], y[meets]
    if x.size < ratio:
        raise AssertionError("lattice produced fewer squares than required")
    d2 = x * x + y * y
    order = np.lexsort((y, x, d2))
    keep = order[:ratio]
    centers = x[keep] + 1j * y[keep]
    # containment guaranteed by the grid counting bound; assert it anyway
    assert np.max(np.abs(centers)) + h / math.sqrt(2.0) \
        <= (1.0 + 4.0 / math.sqrt(ratio)) * (1 + 1e-12)
    return centers


def pack_squares(R: float, r: float) -> list[Square]:
    """Pack R/r pairwise essentially disjoint lattice squares of side
    sqrt(pi r R), each meeting B(0,R), all inside B(0, R(1+4 sqrt(r/R))).

    Requires r < R/16 and R/r integer.
    """
    if R <= 0 or r <= 0:
        raise ValueError("R and r must be positive")
    if r >= R / 16:
        raise ValueError("packing requires r < R/16")
    ratio = round(R / r)
    if abs(R / r - ratio) > 1e-9:
        raise ValueError("packing requires R/r to be an integer")
    offsets = _pack_offsets(ratio) * R
    side = math.sqrt(math.pi * r * R)
    return [Square(c, side) for c in offsets]


def symmetric_difference_area(R: float, squares: list[Square],
                              grid: int = 2048) -> float:
    """Normalized area of B(0,R) symmetric-difference the packed squares,
    by cell counting with exact column overlaps per square.

    Both sets have normalized measure R^2, so the symmetric difference
    is twice the part of the disc not covered by squares.
    """
    # squares are essentially disjoint, so covered-in-disc area adds up
    covered = 0.0
    for q in squares:
        covered += _square_disc_overlap(q, R, grid)
    disc_area = R * R
    union_area = len(squares) * (squares[0].side ** 2 / math.pi)
    return (disc_area - covered) + (union_area - covered)


def _square_disc_overlap(q: Square, R: float, grid: int) -> float:
    """Normalized area of q intersect B(0,R): exact y-chords on an
    x-grid over the square (midpoint rule)."""
    h = q.side
    x0 = q.center.real - h / 2
    y0, y1 = q.center.imag - h / 2, q.center.imag + h / 2
    xs = x0 + (np.arange(grid) + 0.5) * (h / grid)
    inside = np.abs(xs) <= R
    half = np.zeros_like(xs)
    half[inside] = np.sqrt(np.maximum(R * R - xs[inside] ** 2, 0.0))
    lo = np.maximum(-half, y0)
    hi = np.minimum(half, y1)
    chords = np.where(inside, np.maximum(hi - lo, 0.0), 0.0)
    return float(np.sum(chords) * (h / grid)) / math.pi


@dataclass(frozen=True)
class _Level:
    n: int
    centers: np.ndarray           # complex128, construction (preorder) order
    radius: float
    enlarged_radius: float
    square_side: float | None     # None at level 0
    lattice: dict | None = field(default=None, repr=False)
    # lattice maps integer cell (i, j) of the child lattice to the child
    # offset position within a parent's block; built on the parent level


class TreeNode:
    """Read-only view of one disc of the hierarchy."""

    def __init__(self, tree: "ConstructionTree", level: int, index: int):
        self.tree = tree
        self.level = level
        self.index = index

    @property
    def center(self) -> complex:
        return complex(self.tree.levels[self.level].centers[self.index])

    @property
    def core_disc(self) -> Disc:
        return Disc(self.center, self.tree.levels[self.level].radius)

    @property
    def enlarged_disc(self) -> Disc:
        return Disc(self.center, self.tree.levels[self.level].enlarged_radius)

    @property
    def square(self) -> Square | None:
        side = self.tree.levels[self.level].square_side
        return None if side is None else Square(self.center, side)

    @property
    def parent(self) -> "TreeNode | None":
        if self.level == 0:
            return None
        q = self.tree.schedule.ratio(self.level - 1)
        return TreeNode(self.tree, self.level - 1, self.index // q)

    @property
    def children(self) -> list["TreeNode"]:
        if self.level >= self.tree.depth:
            return []
        sl = self.tree.child_slice(self.level, self.index)
        return [TreeNode(self.tree, self.level + 1, k)
                for k in range(sl.start, sl.stop)]

    def __repr__(self):
        return f"TreeNode(level={self.level}, index={self.index})"


class ConstructionTree:
    """The built hierarchy: per-level center arrays plus the schedule."""

    def __init__(self, schedule: RadiiSchedule, levels: list[_Level]):
        self.schedule = schedule
        self.levels = levels

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def level_count(self, n: int) -> int:
        return len(self.levels[n].centers)

    def node(self, level: int, index: int) -> TreeNode:
        return TreeNode(self, level, index)

    @property
    def root(self) -> TreeNode:
        return self.node(0, 0)

    def child_slice(self, level: int, index: int) -> slice:
        q = self.schedule.ratio(level)
        return slice(index * q, (index + 1) * q)

    def descendant_slice(self, level: int, index: int, at_level: int) -> slice:
        """Index range of the level `at_level` descendants of a node."""
        if not level <= at_level <= self.depth:
            raise ValueError("level out of range")
        f = 1
        for k in range(level, at_level):
            f *= self.schedule.ratio(k)
        return slice(index * f, (index + 1) * f)

    def displaced(self, level: int, index: int, delta: complex
                  ) -> "ConstructionTree":
        """Copy of the tree with one node's center moved (a negative
        control: the result violates the separation properties)."""
        levels = list(self.levels)
        lv = levels[level]
        centers = lv.centers.copy()
        centers[index] += delta
        levels[level] = _Level(lv.n, centers, lv.radius, lv.enlarged_radius,
                               lv.square_side, lv.lattice)
        return ConstructionTree(self.schedule, levels)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> str:
        payload = {
            "schedule": {
                "ratios": list(self.schedule.ratios),
                "continuation_ratio": self.schedule.continuation_ratio,
            },
            "depth": self.depth,
            "levels": [
                {
                    "level": lv.n,
                    "inv_radius": self.schedule.inv_radius(lv.n),
                    "centers": [[float(c.real), float(c.imag)]
                                for c in lv.centers],
                }
                for lv in self.levels
            ],
        }
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> "ConstructionTree":
        payload = json.loads(text)
        sched = RadiiSchedule(
            tuple(payload["schedule"]["ratios"]),
            payload["schedule"]["continuation_ratio"],
        )
        tree = build_hierarchy(sched, payload["depth"])
        # verify stored centers match the deterministic rebuild
        for lv, stored in zip(tree.levels, payload["levels"]):
            arr = np.array([complex(re, im) for re, im in stored["centers"]])
            if arr.shape != lv.centers.shape or not np.array_equal(
                arr, lv.centers
            ):
                # fall back to the stored geometry
                object.__setattr__(lv, "centers", arr)
        return tree


def _child_lattice(ratio: int) -> tuple[np.ndarray, dict]:
    """Offsets (unit-disc scale) and cell->position map for one level."""
    offsets = _pack_offsets(ratio)
    h = math.sqrt(math.pi / ratio)
    cells = {}
    for pos, c in enumerate(offsets):
        i = int(math.floor(c.real / h + 0.5 - 0.5))
        j = int(math.floor(c.imag / h + 0.5 - 0.5))
        cells[(i, j)] = pos
    return offsets, cells


def build_hierarchy(schedule: RadiiSchedule, depth: int | None = None
                    ) -> ConstructionTree:
    """Build the hierarchy to the given depth (default: schedule depth).

    Level 0 is the single core disc B(0,1).  Every level-n node gets the
    same packed-square offsets scaled by r_n, so the whole next level is
    one broadcast addition.
    """
    if depth is None:
        depth = schedule.depth
    if depth < 0 or depth > schedule.depth:
        raise ScheduleError(f"depth {depth} outside schedule range")
    levels = [
        _Level(0, np.zeros(1, dtype=complex), 1.0, schedule.enlargement(0),
               None)
    ]
    for n in range(depth):
        ratio = schedule.ratio(n)
        offsets, cells = _child_lattice(ratio)
        r_par = schedule.radius(n)
        prev = levels[-1]
        object.__setattr__(prev, "lattice", cells)
        centers = (prev.centers[:, None] + offsets[None, :] * r_par).ravel()
        r_next = schedule.radius(n + 1)
        levels.append(
            _Level(n + 1, centers, r_next,
                   schedule.enlargement(n + 1) * r_next,
                   schedule.square_side(n + 1))
        )
    return ConstructionTree(schedule, levels)


# -- verification ----------------------------------------------------------


@dataclass
class SeparationReport:
    """Outcome of checking properties (a), (b), (c) of the hierarchy."""

    records: list[dict]
    passed: bool

    def min_gap(self, level: int) -> float:
        gaps = [r["measured"] for r in self.records
                if r["level"] == level and r["property"] == "c"]
        return min(gaps) if gaps else math.inf


def verify_separation(
    tree: ConstructionTree,
    exhaustive_limit: int = 40000,
    samples: int = 100000,
    seed: int = 0,
    tol: float = 1e-12,
) -> SeparationReport:
    """Check, per level: (a) child squares inside the parent enlarged
    disc, (b) enlarged discs deep inside their squares, (c) pairwise
    separation of enlarged discs.

    (c) is exhaustive (chunked pairwise distances) up to
    `exhaustive_limit` nodes per level, and sampled via a KD-tree
    nearest-neighbor query above that.
    """
    from scipy.spatial import cKDTree

    sched = tree.schedule
    records: list[dict] = []
    for n in range(1, tree.depth + 1):
        lv = tree.levels[n]
        par = tree.levels[n - 1]
        ratio = sched.ratio(n - 1)
        thresh = sched.separation(n)
        scale_tol = tol * max(1.0, abs(par.centers).max() if len(par.centers) else 1.0)

        # (a) child squares inside parent enlarged disc
        parents = np.repeat(np.arange(len(par.centers)), ratio)
        d = np.abs(lv.centers - par.centers[parents])
        half_diag = lv.square_side * math.sqrt(2.0) / 2.0
        margin_a = par.enlarged_radius - (float(d.max()) + half_diag)
        records.append({
            "level": n, "property": "a", "measured": margin_a,
            "threshold": -scale_tol, "passed": margin_a >= -scale_tol,
            "mode": "exhaustive",
        })

        # (b) enlarged disc to square boundary
        margin_b = lv.square_side / 2.0 - lv.enlarged_radius
        records.append({
            "level": n, "property": "b", "measured": margin_b,
            "threshold": thresh, "passed": margin_b >= thresh - scale_tol,
            "mode": "exhaustive",
        })

        # (c) pairwise enlarged-disc separation
        centers = lv.centers
        count = len(centers)
        if count <= exhaustive_limit:
            min_dist = math.inf
            chunk = max(1, 10_000_000 // max(count, 1))
            for lo in range(0, count, chunk):
                block = centers[lo:lo + chunk, None] - centers[None, :]
                dd = np.abs(block)
                rows = np.arange(lo, min(lo + chunk, count))
                dd[rows - lo, rows] = np.inf
                min_dist = min(min_dist, float(dd.min()))
            mode = "exhaustive"
        else:
            rng = np.random.default_rng(seed)
            pick = rng.choice(count, size=min(samples, count), replace=False)
            pick.sort()
            pts = np.column_stack([centers.real, centers.imag])
            kd = cKDTree(pts)
            dist, _ = kd.query(pts[pick], k=2)
            min_dist = float(dist[:, 1].min())
            mode = f"sampled({len(pick)})"
        gap = min_dist - 2.0 * lv.enlarged_radius
        records.append({
            "level": n, "property": "c", "measured": gap,
            "threshold": thresh, "passed": gap >= thresh - scale_tol,
            "mode": mode,
        })
    return SeparationReport(records, all(r["passed"] for r in records))


def locate(tree: ConstructionTree, z: complex, n: int,
           region: str = "disc") -> TreeNode | None:
    """The unique level-n node whose enlarged disc (region="disc") or
    square (region="square") contains z, or None.

    Descends via the square lattice: membership in B^(n) forces the
    whole chain of ancestor squares, so the walk is O(depth).
    """
    if not 0 <= n <= tree.depth:
        raise ValueError("level out of range")
    idx = 0
    for k in range(n):
        lv = tree.levels[k]
        r_par = lv.radius
        ratio = tree.schedule.ratio(k)
        h = math.sqrt(math.pi / ratio) * r_par
        w = (z - lv.centers[idx]) / h
        i0, j0 = int(math.floor(w.real)), int(math.floor(w.imag))
        child = None
        side = tree.levels[k + 1].square_side
        for i in (i0, i0 - 1, i0 + 1):
            for j in (j0, j0 - 1, j0 + 1):
                pos = lv.lattice.get((i, j)) if lv.lattice else None
                if pos is None:
                    continue
                cand = idx * ratio + pos
                c = tree.levels[k + 1].centers[cand]
                if (abs((z - c).real) <= side / 2 + 1e-12
                        and abs((z - c).imag) <= side / 2 + 1e-12):
                    child = cand
                    break
            if child is not None:
                break
        if child is None:
            return None
        idx = child
    lv = tree.levels[n]
    c = lv.centers[idx]
    if region == "square":
        if n == 0:
            raise ValueError("level 0 has no square")
        ok = (abs((z - c).real) <= lv.square_side / 2
              and abs((z - c).imag) <= lv.square_side / 2)
    else:
        ok = abs(z - c) <= lv.enlarged_radius
    return tree.node(n, idx) if ok else None
