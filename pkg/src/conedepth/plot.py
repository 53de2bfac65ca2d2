"""Static SVG rendering of a sample with layered cone quantiles.

Coordinates map the data bounding box plus a 10% margin onto the canvas with
the y axis pointing up. Numbers are printed with fixed precision so the output
is byte-identical across runs.
"""
from __future__ import annotations

import math

import numpy as np

WIDTH = HEIGHT = 600
PALETTE = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d")


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


class _Frame:
    def __init__(self, xy: np.ndarray):
        lo, hi = xy.min(axis=0), xy.max(axis=0)
        span = np.maximum(hi - lo, 1e-12)
        # a flat sample still gets a square-ish window
        span = np.maximum(span, span.max() * 0.1) if span.max() > 1e-12 else np.array([1.0, 1.0])
        mid = (lo + hi) / 2.0
        self.lo = mid - 0.6 * span
        self.hi = mid + 0.6 * span

    def __call__(self, x, y):
        sx = (x - self.lo[0]) / (self.hi[0] - self.lo[0]) * WIDTH
        sy = HEIGHT - (y - self.lo[1]) / (self.hi[1] - self.lo[1]) * HEIGHT
        return sx, sy

    @property
    def diagonal(self) -> float:
        return float(math.hypot(*(self.hi - self.lo)))


def boundary_polyline(poly, cone, reach: float) -> list:
    """Boundary chain of a cone quantile, extended by ``reach`` along ``b1`` and ``b2``.

    The chain runs from the facet orthogonal to ``b1`` to the one orthogonal
    to ``b2``, so the first vertex continues along ``b1`` and the last along ``b2``.
    """
    chain = [tuple(p) for p in poly.boundary_chain()]
    if not chain:
        return []
    b1 = np.asarray(cone.b1) / math.hypot(*cone.b1)
    b2 = np.asarray(cone.b2) / math.hypot(*cone.b2)
    start = tuple(np.asarray(chain[0]) + reach * b1)
    end = tuple(np.asarray(chain[-1]) + reach * b2)
    return [start] + chain + [end]


def render_svg(X, cone, results, labels=None) -> str:
    xy = X.xy
    frame = _Frame(xy)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<defs><clipPath id="frame"><rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}"/></clipPath></defs>',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white" stroke="black"/>',
        '<g clip-path="url(#frame)" fill="none" stroke-width="1.5">',
    ]
    for k, res in enumerate(results):
        pts = boundary_polyline(res.poly, cone, 2.0 * frame.diagonal)
        coords = " ".join(f"{_fmt(sx)},{_fmt(sy)}" for sx, sy in (frame(x, y) for x, y in pts))
        color = PALETTE[k % len(PALETTE)]
        out.append(f'<polyline class="quantile" data-p="{res.p!r}" points="{coords}" stroke="{color}"/>')
    out.append("</g>")
    out.append('<g class="data" fill="black">')
    for x, y in xy:
        sx, sy = frame(x, y)
        out.append(f'<circle cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="3"/>')
    out.append("</g>")
    if labels is not None:
        out.append('<g class="depth" font-family="sans-serif" font-size="10" fill="#333333">')
        for (x, y), k in zip(xy, labels):
            sx, sy = frame(x, y)
            out.append(f'<text x="{_fmt(sx + 4)}" y="{_fmt(sy - 4)}">{int(k)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
