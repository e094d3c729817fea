"""Backend selection for the hot summation loops.

The compiled Cython extension is used when available; otherwise the
numpy/fsum fallback.  Set CANTORSI_NO_ACCEL=1 to force the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("CANTORSI_NO_ACCEL"):
    from . import fallback as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import fallback as _impl

        BACKEND = "python"

disc_sum = _impl.disc_sum
disc_sum_masked = _impl.disc_sum_masked

__all__ = ["BACKEND", "disc_sum", "disc_sum_masked"]
