"""Independent brute-force oracles used only by the tests."""

from __future__ import annotations

import math

import numpy as np


def grid_area(member, x0, x1, y0, y1, n=1024, sub=8) -> float:
    """Normalized area of {member(x, y)} inside the box, midpoint grid
    with subsampled boundary cells.  member must be vectorized."""
    hx = (x1 - x0) / n
    hy = (y1 - y0) / n
    xs = x0 + (np.arange(n) + 0.5) * hx
    ys = y0 + (np.arange(n) + 0.5) * hy
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    inside = member(X, Y)
    cx = x0 + np.arange(n + 1) * hx
    cy = y0 + np.arange(n + 1) * hy
    CX, CY = np.meshgrid(cx, cy, indexing="ij")
    corner = member(CX, CY)
    mixed = (corner[:-1, :-1] != corner[1:, 1:]) \
        | (corner[:-1, :-1] != corner[1:, :-1]) \
        | (corner[:-1, :-1] != corner[:-1, 1:])
    area = float(np.count_nonzero(inside & ~mixed)) * hx * hy
    mi, mj = np.nonzero(mixed)
    if mi.size:
        f = (np.arange(sub) + 0.5) / sub
        sx = xs[mi][:, None, None] + (f[None, :, None] - 0.5) * hx
        sy = ys[mj][:, None, None] + (f[None, None, :] - 0.5) * hy
        area += float(np.count_nonzero(member(sx, sy))) * hx * hy / (sub * sub)
    return area / math.pi


def grid_kernel_integral(member, omega, x0, x1, y0, y1, n=2048) -> complex:
    """Crude midpoint-grid value of the integral of K(omega - xi) over
    {member}, for sanity checks only (the kernel must be nonsingular on
    the region or the singularity must be mild relative to n)."""
    hx = (x1 - x0) / n
    hy = (y1 - y0) / n
    xs = x0 + (np.arange(n) + 0.5) * hx
    ys = y0 + (np.arange(n) + 0.5) * hy
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    inside = member(X, Y)
    W = omega - (X + 1j * Y)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.where(inside & (W != 0), np.conj(W) / (W * W), 0.0)
    return complex(np.sum(vals)) * hx * hy / math.pi
