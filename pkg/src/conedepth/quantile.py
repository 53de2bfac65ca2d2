"""Set-valued lower cone quantiles of a bivariate sample.

The quantile at level ``p`` is the set of points whose cone location depth is at
least ``K = ceil(N p)``. It is a convex polyhedron with the ordering cone as
recession cone, obtained by sweeping the normal ``w`` across the dual segment
and intersecting the ``w``-quantile halfspaces met on the way.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import OutOfRange
from .geometry import (
    EPS,
    ConeV,
    DualBase,
    Halfspace,
    Polyhedron2,
    _line_meet,
    _sort_points,
    dual_base,
    intersect_halfspaces,
    minimal_chain,
    weight_at,
)
from .sweep import _scal, as_dataset, index_sort


@dataclass(frozen=True)
class Normal:
    w: tuple
    q: float
    anchor_index: int


@dataclass(frozen=True)
class TraceStep:
    w: tuple
    s_bar: Optional[float]  # None for the closing direction v2
    count_le: int
    kept: bool


@dataclass(frozen=True)
class SweepTrace:
    steps: tuple

    @property
    def rotation_steps(self) -> int:
        return len(self.steps) - 1


@dataclass(frozen=True)
class QuantileResult:
    p: float
    K: int
    poly: Polyhedron2
    normals: tuple
    rotation_steps: int


def level(n: int, p: float) -> int:
    """``ceil(n p)``, robust to representation error in ``p`` (0.3 * 10 is 3, not 4)."""
    if not (0.0 < p <= 1.0):
        raise OutOfRange(f"probability level {p} outside (0, 1]")
    return min(n, max(1, math.ceil(round(n * p, 9))))


def w_quantile(X, w, p: float) -> Halfspace:
    X = as_dataset(X)
    K = level(X.n, p)
    vals = _scal(X.xy, w)
    return Halfspace(w, float(vals[index_sort(vals)[K - 1]]))


def sweep_base(X, base: DualBase, K: int, eps: float = EPS):
    """Run the quantile sweep over ``base``; returns the visited directions with bookkeeping.

    Each record is ``(w, s_bar, q, anchor, count_le, kept)``. Interior
    directions whose closed lower halfspace holds exactly ``K`` points are
    marked as not kept; both segment endpoints are always kept.
    """
    X = as_dataset(X)
    ts, qs, anchors, counts = kernels.quantile_sweep(X.xy, K, base.v1, base.v2, eps)
    out = []
    last = len(ts) - 1
    for i, (t, q, a, cnt) in enumerate(zip(ts, qs, anchors, counts)):
        s_bar = None if i == last else (ts[i + 1] - t) / (1.0 - t)
        kept = i in (0, last) or cnt > K
        out.append((weight_at(base, t), s_bar, q, a, cnt, kept))
    return out


def cone_quantile(X, cone: ConeV, p: float, eps: float = EPS):
    """Lower cone quantile of ``X`` at level ``p``.

    Returns ``(QuantileResult, SweepTrace)``.
    """
    X = as_dataset(X)
    K = level(X.n, p)
    base = dual_base(cone)
    records = sweep_base(X, base, K, eps)
    trace = SweepTrace(tuple(TraceStep(w, s, cnt, kept) for w, s, _, _, cnt, kept in records))

    cand = [(Halfspace(w, q), a) for w, _, q, a, _, kept in records if kept]
    hs = [h for h, _ in cand]
    keep = minimal_chain(hs, (cone.b1, cone.b2), eps)
    poly = intersect_halfspaces([hs[i] for i in keep], (cone.b1, cone.b2), eps)
    poly = Polyhedron2(poly.hrep, _data_vertices(X, poly.hrep, eps), poly.rec_dirs)
    normals = tuple(Normal(hs[i].w, hs[i].q, cand[i][1]) for i in keep)
    return QuantileResult(p, K, poly, normals, trace.rotation_steps), trace


def _data_vertices(X, hrep, eps: float) -> tuple:
    """Vertices of a cone quantile, taken as data points where possible.

    Consecutive facets usually pivot around a shared data point; using that
    point instead of the computed line meet removes round-off from the
    vertex list. Other vertices fall back to the meet of the two lines.
    """
    out = []
    for h, g in zip(hrep, hrep[1:]):
        on = (np.abs(_scal(X.xy, h.w) - h.q) <= eps) & (np.abs(_scal(X.xy, g.w) - g.q) <= eps)
        hit = np.flatnonzero(on)
        out.append(tuple(X.xy[hit[0]]) if hit.size else _line_meet(h, g))
    return _sort_points(p for p in out if p is not None)


def cone_quantiles(X, cone: ConeV, levels, eps: float = EPS) -> list:
    """Quantiles for several levels, ordered by ascending ``p``."""
    return [cone_quantile(X, cone, p, eps)[0] for p in sorted(levels)]
