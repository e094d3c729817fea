# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: compensated summation of disc closed forms.

The disc integral of K(z - .) for an exterior z with w = z - center is
r^2*conj(w)/w^2 - r^4/w^3, i.e. conj(w)^3 * (r^2/|w|^4 - r^4/|w|^6).
These loops accumulate that expression over large arrays of equal-radius
disc centers in array order with Kahan compensation, so results are
deterministic and independent of chunking.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def disc_sum(double[::1] cre, double[::1] cim, double radius,
             double zre, double zim):
    """Kahan-compensated sum of exterior disc integrals over all centers.

    Returns (sum, abs_sum, min_dist): the complex sum, the sum of term
    magnitudes (for a rounding-error bound), and the minimum |z - c|.
    """
    cdef Py_ssize_t n = cre.shape[0]
    cdef Py_ssize_t j
    cdef double r2 = radius * radius
    cdef double wr, wi, m, f, b3r, b3i, tr, ti
    cdef double sr = 0.0, si = 0.0, crr = 0.0, cii = 0.0
    cdef double yr, yi, t1r, t1i
    cdef double abssum = 0.0
    cdef double mind = 1e300, dd
    for j in range(n):
        wr = zre - cre[j]
        wi = zim - cim[j]
        m = wr * wr + wi * wi
        dd = m
        if dd < mind:
            mind = dd
        if m <= r2:
            # interior point: term is exactly zero
            continue
        # conj(w)^3
        b3r = wr * (wr * wr - 3.0 * wi * wi)
        b3i = wi * (wi * wi - 3.0 * wr * wr)
        f = (r2 / (m * m)) * (1.0 - r2 / m)
        tr = b3r * f
        ti = b3i * f
        abssum += (tr * tr + ti * ti) ** 0.5
        # Kahan step, real and imaginary lanes
        yr = tr - crr
        t1r = sr + yr
        crr = (t1r - sr) - yr
        sr = t1r
        yi = ti - cii
        t1i = si + yi
        cii = (t1i - si) - yi
        si = t1i
    return complex(sr, si), abssum, mind ** 0.5


def disc_sum_masked(double[::1] cre, double[::1] cim, double radius,
                    double zre, double zim, cnp.uint8_t[::1] mask):
    """Like disc_sum but only over entries with mask nonzero."""
    cdef Py_ssize_t n = cre.shape[0]
    cdef Py_ssize_t j
    cdef double r2 = radius * radius
    cdef double wr, wi, m, f, b3r, b3i, tr, ti
    cdef double sr = 0.0, si = 0.0, crr = 0.0, cii = 0.0
    cdef double yr, yi, t1r, t1i
    cdef double abssum = 0.0
    cdef double mind = 1e300
    for j in range(n):
        if mask[j] == 0:
            continue
        wr = zre - cre[j]
        wi = zim - cim[j]
        m = wr * wr + wi * wi
        if m < mind:
            mind = m
        if m <= r2:
            continue
        b3r = wr * (wr * wr - 3.0 * wi * wi)
        b3i = wi * (wi * wi - 3.0 * wr * wr)
        f = (r2 / (m * m)) * (1.0 - r2 / m)
        tr = b3r * f
        ti = b3i * f
        abssum += (tr * tr + ti * ti) ** 0.5
        yr = tr - crr
        t1r = sr + yr
        crr = (t1r - sr) - yr
        sr = t1r
        yi = ti - cii
        t1i = si + yi
        cii = (t1i - si) - yi
        si = t1i
    return complex(sr, si), abssum, mind ** 0.5
