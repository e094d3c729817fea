"""Deterministic SVG figures: construction interiors and truncation
oscillation plots.

Hand-rolled SVG (no plotting dependency): the figures are a few hundred
primitive elements, and emitting them directly keeps the output
byte-stable across environments.
"""

from __future__ import annotations

import math

from .construction import ConstructionTree
from .measure import LevelMeasure

__all__ = ["render_node", "render_oscillation"]


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def render_node(tree: ConstructionTree, level: int = 0, index: int = 0,
                size: int = 720) -> str:
    """SVG of one node's interior: the enlarged disc, the dashed core
    circle, and the children's squares and core/enlarged discs."""
    node = tree.node(level, index)
    lv = tree.levels[level]
    c = node.center
    R = lv.enlarged_radius
    scale = size / (2.2 * R)

    def sx(x: float) -> str:
        return _fmt((x - c.real) * scale + size / 2)

    def sy(y: float) -> str:
        # svg y grows downward
        return _fmt(size / 2 - (y - c.imag) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        # enlarged disc
        f'<circle cx="{sx(c.real)}" cy="{sy(c.imag)}" '
        f'r="{_fmt(R * scale)}" fill="none" stroke="black" '
        f'stroke-width="1.5"/>',
        # core circle, dashed
        f'<circle cx="{sx(c.real)}" cy="{sy(c.imag)}" '
        f'r="{_fmt(lv.radius * scale)}" fill="none" stroke="black" '
        f'stroke-width="1" stroke-dasharray="6 4"/>',
    ]
    if level < tree.depth:
        child_lv = tree.levels[level + 1]
        sl = tree.child_slice(level, index)
        side = child_lv.square_side
        for j in range(sl.start, sl.stop):
            cc = complex(child_lv.centers[j])
            out.append(
                f'<rect x="{sx(cc.real - side / 2)}" '
                f'y="{sy(cc.imag + side / 2)}" '
                f'width="{_fmt(side * scale)}" '
                f'height="{_fmt(side * scale)}" '
                f'fill="#eeeeee" stroke="#999999" stroke-width="0.6"/>'
            )
        for j in range(sl.start, sl.stop):
            cc = complex(child_lv.centers[j])
            out.append(
                f'<circle cx="{sx(cc.real)}" cy="{sy(cc.imag)}" '
                f'r="{_fmt(child_lv.enlarged_radius * scale)}" '
                f'fill="none" stroke="#555555" stroke-width="0.5"/>'
            )
            out.append(
                f'<circle cx="{sx(cc.real)}" cy="{sy(cc.imag)}" '
                f'r="{_fmt(child_lv.radius * scale)}" '
                f'fill="#444444" stroke="none"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_oscillation(mu: LevelMeasure, z: complex,
                       rho_min: float | None = None,
                       rho_max: float = 2.0,
                       points: int = 200,
                       width: int = 840, height: int = 420) -> str:
    """SVG plot of Re and Im of the truncated integral of K(z - .)
    against the truncation radius rho (log axis), visualizing the
    oscillation that defeats the principal value."""
    if rho_min is None:
        rho_min = mu.radius / 2
    if not 0 < rho_min < rho_max:
        raise ValueError("need 0 < rho_min < rho_max")
    lo, hi = math.log(rho_min), math.log(rho_max)
    rhos = [math.exp(lo + (hi - lo) * k / (points - 1))
            for k in range(points)]
    vals = [mu.truncated_t1(z, rho).value for rho in rhos]
    ymax = max(max(abs(v.real), abs(v.imag)) for v in vals) or 1.0
    pad = 40

    def px(rho: float) -> float:
        return pad + (math.log(rho) - lo) / (hi - lo) * (width - 2 * pad)

    def py(y: float) -> float:
        return height / 2 - y / (1.1 * ymax) * (height / 2 - pad)

    def path(series) -> str:
        pts = " ".join(f"{_fmt(px(r))},{_fmt(py(v))}"
                       for r, v in zip(rhos, series))
        return pts

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{_fmt(height / 2)}" x2="{width - pad}" '
        f'y2="{_fmt(height / 2)}" stroke="#aaaaaa" stroke-width="1"/>',
        f'<polyline fill="none" stroke="#0055cc" stroke-width="1.5" '
        f'points="{path([v.real for v in vals])}"/>',
        f'<polyline fill="none" stroke="#cc3300" stroke-width="1.5" '
        f'points="{path([v.imag for v in vals])}"/>',
        f'<text x="{pad}" y="{pad - 16}" font-size="13" '
        f'font-family="sans-serif">truncated integral at '
        f'z = {z.real:.6g} + {z.imag:.6g}i '
        f'(blue: Re, red: Im), log rho from {rho_min:.3g} to '
        f'{rho_max:.3g}, |y| max {ymax:.3g}</text>',
        "</svg>",
    ]
    return "\n".join(out) + "\n"
