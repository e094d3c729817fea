import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorsi.geometry import AnnulusCap, Disc, Square
from cantorsi.kernel import (
    abs_kernel_mass_bound,
    adaptive_quadrature,
    annulus_cap_integral,
    disc_integral,
    eval_kernel,
    polygon_integral,
)

nonzero = st.complex_numbers(
    min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False,
    allow_infinity=False)


def test_eval_kernel_values():
    assert eval_kernel(1) == 1
    assert eval_kernel(1j) == 1j
    assert eval_kernel(2) == 0.5
    with pytest.raises(ZeroDivisionError):
        eval_kernel(0)


@given(z=nonzero)
@settings(max_examples=100, deadline=None)
def test_kernel_oddness_and_magnitude(z):
    assert eval_kernel(-z) == -eval_kernel(z)
    assert abs(eval_kernel(z)) == pytest.approx(1 / abs(z), rel=1e-12)


@given(z=nonzero, lam=st.floats(1e-2, 1e2), theta=st.floats(-3.1, 3.1))
@settings(max_examples=100, deadline=None)
def test_kernel_homogeneity_and_rotation(z, lam, theta):
    assert eval_kernel(lam * z) == pytest.approx(eval_kernel(z) / lam,
                                                 rel=1e-10)
    rot = cmath.exp(1j * theta)
    assert eval_kernel(rot * z) == pytest.approx(
        eval_kernel(z) * cmath.exp(-3j * theta), rel=1e-10)


def test_polar_identity():
    # K(t e^{i a}) = e^{-3ia}/t: the phase makes three revolutions
    for t, a in [(0.5, 0.3), (2.0, -1.1), (1.0, 2.9)]:
        z = t * cmath.exp(1j * a)
        assert eval_kernel(z) == pytest.approx(cmath.exp(-3j * a) / t,
                                               rel=1e-12)


def test_disc_integral_interior_is_exactly_zero(rng):
    for _ in range(50):
        d = Disc(complex(*rng.uniform(-2, 2, 2)), rng.uniform(0.1, 2))
        ang = rng.uniform(-math.pi, math.pi)
        w = d.center + d.radius * math.sqrt(rng.uniform()) * cmath.exp(1j * ang)
        assert disc_integral(d, w).value == 0j


def test_disc_integral_golden_exterior():
    res = disc_integral(Disc(0j, 1.0), 2.0)
    assert res.value == pytest.approx(0.375, abs=1e-15)
    # boundary point: both branches vanish
    assert disc_integral(Disc(0j, 1.0), 1.0).value == 0j


def test_disc_integral_vs_oracle(rng):
    for _ in range(10):
        d = Disc(complex(*rng.uniform(-1, 1, 2)), rng.uniform(0.2, 1))
        w = d.center + (d.radius * rng.uniform(1.2, 3)) * cmath.exp(
            1j * rng.uniform(-math.pi, math.pi))
        res = disc_integral(d, w)
        orac = adaptive_quadrature(d, w, 1e-10)
        assert abs(res.value - orac.value) < 1e-8


def test_polygon_integral_symmetric_square_is_zero():
    w = 0.7 - 0.2j
    sq = Square(w, 1.3)
    res = polygon_integral(sq.vertices, w)
    assert abs(res.value) < 1e-14


def test_polygon_integral_vs_oracle():
    sq = Square(0.5 + 0.5j, 1.0)  # the unit square [0,1]^2
    res = polygon_integral(sq.vertices, 5.0)
    orac = adaptive_quadrature(sq, 5.0, 1e-12)
    assert abs(res.value - orac.value) < 1e-10


def test_polygon_integral_interior_point_vs_oracle():
    sq = Square(0j, 2.0)
    w = 0.3 + 0.1j
    res = polygon_integral(sq.vertices, w)
    orac = adaptive_quadrature(sq, w, 1e-10)
    assert abs(res.value - orac.value) < 1e-8


def test_polygon_many_gon_approximates_disc():
    n = 512
    verts = [cmath.exp(2j * math.pi * k / n) for k in range(n)]
    res = polygon_integral(verts, 2.0)
    area_defect = 1.0 - (n / (2 * math.pi)) * math.sin(2 * math.pi / n)
    assert abs(res.value - 0.375) < 10 * math.sqrt(area_defect)


def test_polygon_additivity():
    a = Square(-0.5 + 0j, 1.0)
    b = Square(0.5 + 0j, 1.0)
    rect = [1 - 0.5j, 1 + 0.5j, -1 + 0.5j, -1 - 0.5j]
    w = 2.0 + 1.5j
    va = polygon_integral(a.vertices, w).value
    vb = polygon_integral(b.vertices, w).value
    vr = polygon_integral(rect, w).value
    assert abs((va + vb) - vr) < 1e-10


def test_polygon_on_edge_falls_back():
    sq = Square(0j, 2.0)
    res = polygon_integral(sq.vertices, 1.0 + 0.3j)  # on the right edge
    assert res.method == "adaptive_quadrature"


def test_annulus_cap_full_annulus_is_zero():
    res = annulus_cap_integral(AnnulusCap(0.3 + 0.1j, 0.7))
    assert res.value == 0j


def test_annulus_cap_boundary_configuration():
    cap = AnnulusCap(0j, 1.0, Disc(1j, 1.0))
    res = annulus_cap_integral(cap, tol=1e-12)
    # real part vanishes by mirror symmetry; imaginary part is the
    # misbalance constant
    assert abs(res.value.real) < 1e-10
    assert res.value.imag == pytest.approx(0.041519029470838, abs=1e-9)
    orac = adaptive_quadrature(cap, 0j, 1e-10)
    assert abs(res.value - orac.value) < 1e-8


def test_annulus_cap_vs_oracle_randomized(rng):
    for _ in range(10):
        center = complex(*rng.uniform(-1, 1, 2))
        r = rng.uniform(0.2, 1.0)
        clip = Disc(center + r * rng.uniform(0.3, 1.5) * cmath.exp(
            1j * rng.uniform(-math.pi, math.pi)), rng.uniform(0.2, 1.2))
        cap = AnnulusCap(center, r, clip)
        res = annulus_cap_integral(cap, tol=1e-11)
        orac = adaptive_quadrature(cap, center, 1e-9)
        assert abs(res.value - orac.value) < 1e-7


def test_translation_covariance(rng):
    shift = 1.7 - 0.4j
    d = Disc(0.2 + 0.1j, 0.6)
    w = 1.5 + 0.9j
    a = disc_integral(d, w).value
    b = disc_integral(Disc(d.center + shift, d.radius), w + shift).value
    assert a == pytest.approx(b, rel=1e-12)


def test_abs_kernel_mass_bound_disc_centered():
    # singularity at the disc center realizes the extremal value 2*rho
    rho = 0.8
    assert abs_kernel_mass_bound(Disc(0j, rho)) == pytest.approx(2 * rho)


def test_abs_kernel_mass_bound_dominates_quadrature(rng):
    # |K| integral over random squares stays below 2 sqrt(m2)
    for _ in range(20):
        side = rng.uniform(0.3, 2.0)
        sq = Square(complex(*rng.uniform(-1, 1, 2)), side)
        w = complex(*rng.uniform(-2, 2, 2))
        bound = abs_kernel_mass_bound(sq)
        # evaluate integral of |K| on a polar-friendly grid
        n = 400
        xs = sq.center.real + (np.arange(n) + 0.5) / n * side - side / 2
        ys = sq.center.imag + (np.arange(n) + 0.5) / n * side - side / 2
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        R = np.hypot(X - w.real, Y - w.imag)
        R = np.maximum(R, side / (2 * n))  # clip the singular cell
        val = float(np.sum(1.0 / R)) * (side / n) ** 2 / math.pi
        assert val <= bound * 1.01


def test_abs_kernel_mass_bound_scaling():
    sq = Square(0j, 1.0)
    big = Square(0j, 3.0)
    assert abs_kernel_mass_bound(big) == pytest.approx(
        3 * abs_kernel_mass_bound(sq))
