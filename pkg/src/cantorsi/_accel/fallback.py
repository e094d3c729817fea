"""Pure-Python backend for the hot summation loops.

Terms are evaluated vectorized with numpy and reduced with math.fsum,
which is exactly rounded and therefore just as deterministic as the
compiled Kahan loop.  Results of the two backends agree to within a few
ulps of the term magnitudes.
"""

from __future__ import annotations

import math

import numpy as np


def _terms(cre, cim, radius, zre, zim):
    wr = zre - cre
    wi = zim - cim
    m = wr * wr + wi * wi
    r2 = radius * radius
    ext = m > r2
    with np.errstate(divide="ignore", invalid="ignore"):
        f = np.where(ext, (r2 / (m * m)) * (1.0 - r2 / m), 0.0)
    b3r = wr * (wr * wr - 3.0 * wi * wi)
    b3i = wi * (wi * wi - 3.0 * wr * wr)
    tr = b3r * f
    ti = b3i * f
    return tr, ti, m


def disc_sum(cre, cim, radius, zre, zim):
    """Sum of exterior disc integrals over all centers; see _kernels."""
    tr, ti, m = _terms(cre, cim, radius, zre, zim)
    value = complex(math.fsum(tr), math.fsum(ti))
    abssum = float(np.sum(np.hypot(tr, ti)))
    mind = math.sqrt(float(np.min(m))) if m.size else math.inf
    return value, abssum, mind


def disc_sum_masked(cre, cim, radius, zre, zim, mask):
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return 0j, 0.0, math.inf
    return disc_sum(cre[idx], cim[idx], radius, zre, zim)
