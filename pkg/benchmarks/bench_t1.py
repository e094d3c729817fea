"""Benchmark the compiled and pure-Python summation backends.

Compares wall time of the exact evaluator's hot loop (closed-form disc
sums over all leaves) and of the treecode under both backends, and
asserts that the two backends agree bit-for-bit on the summed values.

Run:  python3 benchmarks/bench_t1.py [--depth 3] [--points 20]
"""

from __future__ import annotations

import argparse
import importlib
import os
import sys
import time

import numpy as np


def _load_backends():
    from cantorsi._accel import _kernels  # noqa: F401  (fail early if absent)
    from cantorsi._accel import fallback
    from cantorsi._accel import _kernels as compiled
    return {"cython": compiled, "python": fallback}


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--depth", type=int, default=3)
    parser.add_argument("--points", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    from cantorsi.construction import RadiiSchedule, build_hierarchy
    from cantorsi.measure import LevelMeasure

    ratios = tuple([128] * args.depth)
    tree = build_hierarchy(RadiiSchedule(ratios))
    mu = LevelMeasure(tree)
    n_leaves = len(mu.centers)
    print(f"depth {args.depth}: {n_leaves} leaf discs")

    rng = np.random.default_rng(args.seed)
    zs = []
    while len(zs) < args.points:
        z = complex(*rng.uniform(-2, 2, 2))
        if mu.support_distance(z) > 1e-6:
            zs.append(z)

    try:
        backends = _load_backends()
    except ImportError:
        print("compiled extension not available; nothing to compare")
        return 1

    results = {}
    for name, impl in backends.items():
        t0 = time.perf_counter()
        vals = [impl.disc_sum(mu._cre, mu._cim, mu.radius, z.real, z.imag)[0]
                for z in zs]
        dt = time.perf_counter() - t0
        results[name] = vals
        print(f"{name:>7}: exact sum  {dt / len(zs) * 1e3:8.2f} ms/point")

    max_dev = max(abs(a - b) for a, b in
                  zip(results["cython"], results["python"]))
    print(f"backend agreement (exact sums): max |diff| = {max_dev:.3e}")

    # treecode timing under each backend (selection is import-time, so
    # re-exec the accel package with the env toggle)
    for name, env in (("cython", None), ("python", "1")):
        if env is None:
            os.environ.pop("CANTORSI_NO_ACCEL", None)
        else:
            os.environ["CANTORSI_NO_ACCEL"] = env
        import cantorsi._accel as accel
        importlib.reload(accel)
        import cantorsi.measure as measure_mod
        importlib.reload(measure_mod)
        mu2 = measure_mod.LevelMeasure(tree)
        t0 = time.perf_counter()
        fvals = [mu2.t1_fast(z, 1e-6).value for z in zs]
        dt = time.perf_counter() - t0
        print(f"{name:>7}: treecode   {dt / len(zs) * 1e3:8.2f} ms/point "
              f"(backend={accel.BACKEND})")
    os.environ.pop("CANTORSI_NO_ACCEL", None)

    return 0 if max_dev == 0.0 else 1


if __name__ == "__main__":
    sys.exit(main())
