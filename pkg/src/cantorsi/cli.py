"""Command-line front end: build trees, verify invariants, run the
experiments, evaluate the singular integral, and render figures.

Exit codes: 0 success, 1 a check failed or an internal error occurred,
2 invalid configuration (e.g. a schedule violating the radii
constraints), 3 evaluation point on the measure's support.

Outputs are fully determined by the configuration: data files carry no
timestamps; a sidecar metadata file records the provenance.
"""

from __future__ import annotations

import json
import pathlib
import sys

import click

from .construction import (
    RadiiSchedule,
    ScheduleError,
    build_hierarchy,
    verify_separation,
)
from .measure import LevelMeasure, OnSupportError

DEFAULT_SCHEDULE = (128, 128, 128)


def _parse_schedule(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ScheduleError(f"schedule must be comma-separated integers, "
                            f"got {text!r}") from exc


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        return json.loads(pathlib.Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ScheduleError(f"cannot read config {path}: {exc}") from exc


class Settings:
    def __init__(self, config, schedule, depth, seed, tol, out, fmt, threads):
        cfg = _load_config(config)
        sched_spec = schedule or cfg.get("schedule")
        ratios = (_parse_schedule(sched_spec) if isinstance(sched_spec, str)
                  else tuple(sched_spec) if sched_spec else DEFAULT_SCHEDULE)
        self.schedule = RadiiSchedule(ratios)
        self.depth = depth if depth is not None else cfg.get("depth")
        self.seed = seed if seed is not None else cfg.get("seed", 0)
        self.tol = tol if tol is not None else cfg.get("tol", 1e-6)
        self.out = pathlib.Path(out or cfg.get("out", "out"))
        self.fmt = fmt or cfg.get("format", "csv")
        self.threads = threads or cfg.get("threads")

    def tree(self):
        return build_hierarchy(self.schedule, self.depth)

    def write_metadata(self, extra: dict | None = None) -> None:
        self.out.mkdir(parents=True, exist_ok=True)
        from . import __version__
        from ._accel import BACKEND

        meta = {
            "package": "cantorsi",
            "version": __version__,
            "backend": BACKEND,
            "schedule": list(self.schedule.ratios),
            "continuation_ratio": self.schedule.continuation_ratio,
            "depth": self.depth if self.depth is not None
            else self.schedule.depth,
            "seed": self.seed,
            "tol": self.tol,
        }
        if extra:
            meta.update(extra)
        (self.out / "metadata.json").write_text(
            json.dumps(meta, sort_keys=True, indent=2) + "\n")


def _common(f):
    f = click.option("--config", type=click.Path(), default=None,
                     help="JSON config file; flags override it.")(f)
    f = click.option("--schedule", default=None,
                     help="Comma-separated integer ratios, e.g. 128,128,128.")(f)
    f = click.option("--depth", type=int, default=None)(f)
    f = click.option("--seed", type=int, default=None)(f)
    f = click.option("--tol", type=float, default=None)(f)
    f = click.option("--out", type=click.Path(), default=None)(f)
    f = click.option("--format", "fmt",
                     type=click.Choice(["csv", "json", "svg"]),
                     default=None)(f)
    f = click.option("--threads", type=int, default=None,
                     help="Cap worker threads (results are identical "
                          "regardless).")(f)
    return f


def _settings(**kw) -> Settings:
    try:
        return Settings(**kw)
    except ScheduleError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


@click.group()
def main():
    """Numerical verification of a reflectionless Cantor measure whose
    singular integral is bounded off-support but has no principal
    value."""


@main.command()
@_common
def build(**kw):
    """Build the disc/square hierarchy, verify it, and persist it."""
    st = _settings(**kw)
    try:
        tree = st.tree()
    except ScheduleError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    for lv in tree.levels:
        click.echo(f"level {lv.n}: {len(lv.centers)} nodes, "
                   f"radius {lv.radius:.6g}")
    report = verify_separation(tree)
    for rec in report.records:
        click.echo(f"  level {rec['level']} property ({rec['property']}) "
                   f"{'ok' if rec['passed'] else 'FAIL'} "
                   f"margin {rec['measured']:.3e} ({rec['mode']})")
    st.out.mkdir(parents=True, exist_ok=True)
    (st.out / "tree.json").write_text(tree.to_json())
    st.write_metadata({"command": "build",
                       "separation_passed": report.passed})
    click.echo(f"tree written to {st.out / 'tree.json'}")
    sys.exit(0 if report.passed else 1)


@main.command()
@_common
def verify(**kw):
    """Check the separation properties (a), (b), (c) of the hierarchy."""
    st = _settings(**kw)
    try:
        tree = st.tree()
    except ScheduleError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    report = verify_separation(tree)
    for rec in report.records:
        click.echo(f"level {rec['level']} property ({rec['property']}) "
                   f"{'ok' if rec['passed'] else 'FAIL'} "
                   f"margin {rec['measured']:.3e} vs threshold "
                   f"{rec['threshold']:.3e} ({rec['mode']})")
    sys.exit(0 if report.passed else 1)


EXPERIMENTS = ("check-reflectionless", "compute-ctilde", "boundedness",
               "pv-failure", "density-decay")


@main.command()
@click.argument("name", type=click.Choice(EXPERIMENTS))
@_common
def experiment(name, **kw):
    """Run one experiment and emit its CSV/JSON report."""
    from . import experiments as ex

    st = _settings(**kw)
    try:
        if name == "check-reflectionless":
            rep = ex.check_reflectionless(seed=st.seed)
        elif name == "compute-ctilde":
            rep = ex.compute_ctilde()
        elif name == "boundedness":
            rep = ex.boundedness_sweep(st.tree(), seed=st.seed, tol=st.tol)
        elif name == "pv-failure":
            rep = ex.pv_failure(st.tree(), seed=st.seed)
        else:
            rep = ex.density_decay(st.tree(), seed=st.seed)
    except ScheduleError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    fmt = "csv" if st.fmt == "svg" else st.fmt
    paths = rep.write(st.out, fmt)
    st.write_metadata({"command": f"experiment {name}"})
    for key, val in sorted(rep.summary.items()):
        click.echo(f"{key}: {val}")
    for p in paths:
        click.echo(f"wrote {p}")
    sys.exit(0 if rep.passed else 1)


@main.command("eval")
@click.option("--z", "points", multiple=True, required=True,
              help="Evaluation point as re,im (repeatable).")
@click.option("--method", type=click.Choice(["exact", "fast"]),
              default="exact")
@_common
def eval_cmd(points, method, **kw):
    """Evaluate the singular integral T(1) at the given points."""
    st = _settings(**kw)
    try:
        zs = [complex(*(float(p) for p in text.split(","))) for text in points]
    except (ValueError, TypeError):
        click.echo("error: points must look like --z 1.5,-0.25", err=True)
        sys.exit(2)
    try:
        mu = LevelMeasure(st.tree())
    except ScheduleError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    try:
        for z in zs:
            res = (mu.t1_exact(z) if method == "exact"
                   else mu.t1_fast(z, st.tol))
            click.echo(f"T1({z.real:.12g}{z.imag:+.12g}i) = "
                       f"{res.value.real:.15g}{res.value.imag:+.15g}i "
                       f"(error <= {res.error_bound:.3g}, {res.method})")
    except OnSupportError:
        click.echo(f"error: evaluation point on the support", err=True)
        sys.exit(3)
    sys.exit(0)


@main.command()
@click.option("--what", type=click.Choice(["node", "oscillation"]),
              default="node")
@click.option("--level", type=int, default=0)
@click.option("--index", type=int, default=0)
@click.option("--z", "point", default=None,
              help="Oscillation plot evaluation point re,im.")
@_common
def render(what, level, index, point, **kw):
    """Render a construction interior or a truncation oscillation plot."""
    from . import render as rd

    st = _settings(**kw)
    try:
        tree = st.tree()
        if what == "node":
            svg = rd.render_node(tree, level, index)
            name = f"node-{level}-{index}.svg"
        else:
            mu = LevelMeasure(tree)
            if point is None:
                # a point on a level-1 enlarged-disc boundary witnesses
                # the oscillation
                lv = tree.levels[1]
                z = complex(lv.centers[0]) + lv.enlarged_radius
            else:
                z = complex(*(float(p) for p in point.split(",")))
            svg = rd.render_oscillation(mu, z)
            name = "oscillation.svg"
    except ScheduleError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except (ValueError, IndexError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    st.out.mkdir(parents=True, exist_ok=True)
    path = st.out / name
    path.write_text(svg)
    st.write_metadata({"command": f"render {what}"})
    click.echo(f"wrote {path}")
    sys.exit(0)


if __name__ == "__main__":
    main()
