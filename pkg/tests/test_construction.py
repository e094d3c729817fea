import math

import numpy as np
import pytest

from cantorsi.construction import (
    ConstructionTree,
    RadiiSchedule,
    ScheduleError,
    build_hierarchy,
    locate,
    pack_squares,
    symmetric_difference_area,
    verify_separation,
)
from cantorsi.geometry import Disc


def test_schedule_validation():
    with pytest.raises(ScheduleError):
        RadiiSchedule(())
    with pytest.raises(ScheduleError):
        RadiiSchedule((100,))          # needs strict r_1 < r_0/100
    with pytest.raises(ScheduleError):
        RadiiSchedule((128.0,))        # must be integers
    with pytest.raises(ScheduleError):
        RadiiSchedule((128,), continuation_ratio=50)
    s = RadiiSchedule((128, 256))
    assert s.inv_radius(2) == 128 * 256
    assert s.continuation_ratio == 256
    assert s.s(1) == pytest.approx(4 / math.sqrt(128))
    assert s.square_side(1) == pytest.approx(math.sqrt(math.pi / 128))


@pytest.mark.parametrize("R,r", [(1.0, 1 / 128), (1.0, 1 / 256),
                                 (1 / 128, 1 / 16384)])
def test_pack_squares(R, r):
    squares = pack_squares(R, r)
    ratio = round(R / r)
    assert len(squares) == ratio
    side = math.sqrt(math.pi * r * R)
    assert squares[0].side == pytest.approx(side)
    # pairwise interior-disjoint: distinct lattice cells
    cells = {(math.floor(q.center.real / side),
              math.floor(q.center.imag / side)) for q in squares}
    assert len(cells) == ratio
    # each square meets B(0,R); all inside B(0, R(1+4 sqrt(r/R)))
    outer = R * (1 + 4 * math.sqrt(r / R))
    for q in squares:
        c = q.center
        closest = math.hypot(max(abs(c.real) - side / 2, 0.0),
                             max(abs(c.imag) - side / 2, 0.0))
        assert closest <= R + 1e-12
        assert abs(c) + side / math.sqrt(2) <= outer * (1 + 1e-12)


@pytest.mark.parametrize("R,r", [(1.0, 1 / 128), (1.0, 1 / 256),
                                 (1 / 128, 1 / 16384)])
def test_symmetric_difference_constant(R, r):
    squares = pack_squares(R, r)
    sym = symmetric_difference_area(R, squares)
    c_measured = sym / (math.sqrt(r) * R ** 1.5)
    assert c_measured <= 10.0


def test_pack_squares_preconditions():
    with pytest.raises(ValueError):
        pack_squares(1.0, 0.2)       # r >= R/16
    with pytest.raises(ValueError):
        pack_squares(1.0, 1 / 129.5)  # non-integer ratio


def test_build_hierarchy_counts():
    t0 = build_hierarchy(RadiiSchedule((128,)), depth=0)
    assert t0.depth == 0 and t0.level_count(0) == 1
    assert t0.root.core_disc == Disc(0j, 1.0)

    t1 = build_hierarchy(RadiiSchedule((128,)))
    assert t1.level_count(1) == 128

    t2 = build_hierarchy(RadiiSchedule((128, 128)))
    assert t2.level_count(2) == 16384
    assert all(len(t2.node(1, j).children) == 128 for j in (0, 64, 127))


def test_node_navigation(tree2):
    node = tree2.node(2, 5000)
    assert node.parent.index == 5000 // 128
    assert node in node.parent.children or any(
        c.index == node.index for c in node.parent.children)
    assert tree2.node(1, 3).square is not None
    assert tree2.root.square is None


def test_nesting_and_radius_bound(tree2):
    sched = tree2.schedule
    for n in range(1, tree2.depth + 1):
        lv = tree2.levels[n]
        par = tree2.levels[n - 1]
        # enlarged radius <= 2 r_n
        assert lv.enlarged_radius <= 2 * lv.radius
        # child square inside parent enlarged disc (property (a)),
        # hence enlarged discs nest: E^(n) subset E^(n-1)
        parents = np.repeat(np.arange(len(par.centers)),
                            sched.ratio(n - 1))
        d = np.abs(lv.centers - par.centers[parents])
        assert float(d.max()) + lv.square_side / math.sqrt(2) \
            <= par.enlarged_radius + 1e-12


def test_verify_separation_passes(tree2):
    report = verify_separation(tree2)
    assert report.passed
    for rec in report.records:
        assert rec["passed"], rec


def test_verify_separation_negative_control(tree2):
    bad = tree2.displaced(1, 7, 0.5)
    report = verify_separation(bad)
    assert not report.passed


def test_locate_consistency(tree2, rng):
    lv = tree2.levels[2]
    # disc centers locate to their own node
    for j in map(int, rng.integers(0, len(lv.centers), 25)):
        node = locate(tree2, complex(lv.centers[j]), 2)
        assert node is not None and node.index == j
    # random points: agree with brute force over enlarged discs
    for _ in range(25):
        z = complex(*rng.uniform(-1.2, 1.2, 2))
        node = locate(tree2, z, 1)
        lv1 = tree2.levels[1]
        hits = np.flatnonzero(
            np.abs(lv1.centers - z) <= lv1.enlarged_radius)
        if node is None:
            assert hits.size == 0
        else:
            assert hits.size == 1 and hits[0] == node.index
    # far outside everything
    assert locate(tree2, 3 + 0j, 0) is None


def test_json_roundtrip(tree2):
    text = tree2.to_json()
    back = ConstructionTree.from_json(text)
    assert back.schedule == tree2.schedule
    for a, b in zip(tree2.levels, back.levels):
        assert np.array_equal(a.centers, b.centers)
        assert a.radius == b.radius
