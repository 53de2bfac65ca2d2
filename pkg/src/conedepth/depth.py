"""Cone location depth, the lower cone distribution function and Tukey depth.

The depth of ``z`` is the smallest number of points (``z`` included) in a
closed lower halfspace ``{x : w . x <= w . z}`` over all normals ``w`` of the
dual segment. Tukey depth is the same minimum over every direction of the
plane, obtained by running the sweep on three segments that together cover
all directions.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .geometry import EPS, ConeV, DualBase, Halfspace, Point2, Polyhedron2, _sort_points, dual_base, intersect_halfspaces, weight_at
from .quantile import Normal, level, sweep_base
from .sweep import _scal, as_dataset

TUKEY_SEGMENTS = (
    DualBase((-1.0, -1.0), (1.0, -1.0)),
    DualBase((1.0, -1.0), (0.0, 1.0)),
    DualBase((-1.0, -1.0), (0.0, 1.0)),
)


@dataclass(frozen=True)
class DepthResult:
    """``K`` counts ``z`` itself; ``n`` is the size of the sample ``z`` was counted in."""

    K: int
    F: float
    z_was_original: bool
    argmin_w: tuple
    n: int


def w_depth(z, X, w, eps: float = EPS) -> int:
    """Number of data points in the closed halfspace ``{x : w . x <= w . z}``."""
    X = as_dataset(X)
    return int(np.count_nonzero(_scal(X.xy, w) <= w[0] * z[0] + w[1] * z[1] + eps))


def _locate(X, z):
    hits = X.indices_of(z)
    return int(hits[-1]) if hits.size else -1


def _cdf_value(K: int, n: int, original: bool) -> float:
    if original:
        return K / n
    return (K - 1) / (n - 1) if n > 1 else 0.0


def depth_on_base(z, X, base: DualBase, eps: float = EPS):
    """Sweep ``base`` with ``z`` on the boundary; ``(K, original, n, argmin_w)``."""
    X = as_dataset(X)
    z = Point2(*z)
    iz = _locate(X, z)
    K, t_lo, t_hi, _ = kernels.depth_sweep(X.xy, tuple(z), iz, base.v1, base.v2, eps)
    n = X.n if iz >= 0 else X.n + 1
    # the minimum holds on the open arc after t_lo, so report its midpoint
    return int(K), iz >= 0, n, weight_at(base, 0.5 * (t_lo + t_hi))


def cone_depth(z, X, cone: ConeV, eps: float = EPS) -> DepthResult:
    K, original, n, w = depth_on_base(z, X, dual_base(cone), eps)
    return DepthResult(K, _cdf_value(K, n, original), original, w, n)


def cone_cdf(z, X, cone: ConeV, eps: float = EPS) -> float:
    return cone_depth(z, X, cone, eps).F


def cone_cdf_many(zs, X, cone: ConeV, eps: float = EPS, workers=None) -> np.ndarray:
    """Distribution function at many query points, evaluated in parallel chunks.

    The compiled kernel releases the GIL, so threads give real parallelism.
    """
    X = as_dataset(X)
    zs = np.ascontiguousarray(np.asarray(zs, dtype=float).reshape(-1, 2))
    base = dual_base(cone)
    workers = workers or os.cpu_count() or 1
    chunks = [c for c in np.array_split(zs, max(1, min(workers * 4, len(zs)))) if len(c)]

    def run(chunk):
        return kernels.depth_many(X.xy, chunk, base.v1, base.v2, eps)

    if workers == 1 or len(chunks) == 1:
        parts = [run(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, chunks))
    if not parts:
        return np.empty(0)
    K = np.concatenate([p[0] for p in parts]).astype(float)
    orig = np.concatenate([p[1] for p in parts])
    n = X.n
    F = np.where(orig, K / n, (K - 1) / n)
    return F


def grid_points(bounds, nx: int, ny: int) -> np.ndarray:
    """Row-major grid over ``(xmin, xmax, ymin, ymax)``; a single node sits at the lower-left corner."""
    xmin, xmax, ymin, ymax = bounds
    xs = np.linspace(xmin, xmax, nx) if nx > 1 else np.array([float(xmin)])
    ys = np.linspace(ymin, ymax, ny) if ny > 1 else np.array([float(ymin)])
    gx, gy = np.meshgrid(xs, ys)
    return np.column_stack([gx.ravel(), gy.ravel()])


def cone_cdf_grid(X, cone: ConeV, bounds, nx: int, ny: int, eps: float = EPS, workers=None):
    pts = grid_points(bounds, nx, ny)
    return pts, cone_cdf_many(pts, X, cone, eps, workers)


def tukey_depth(z, X, eps: float = EPS) -> int:
    """Halfspace depth of ``z``: the fewest data points in a closed halfplane containing ``z``."""
    X = as_dataset(X)
    ks = [depth_on_base(z, X, b, eps) for b in TUKEY_SEGMENTS]
    K = min(k for k, _, _, _ in ks)
    return K if ks[0][1] else K - 1


@dataclass(frozen=True)
class TukeyRegion:
    p: float
    K: int
    poly: Polyhedron2
    normals: tuple
    rotation_steps: int


def tukey_region_full(X, p: float, eps: float = EPS) -> TukeyRegion:
    X = as_dataset(X)
    K = level(X.n, p)
    cand, steps = [], 0
    for base in TUKEY_SEGMENTS:
        records = sweep_base(X, base, K, eps)
        steps += len(records) - 1
        cand += [(Halfspace(w, q), a) for w, _, q, a, _, kept in records if kept]
    poly = intersect_halfspaces([h for h, _ in cand], None, eps)
    if not poly.is_empty:
        poly = Polyhedron2(poly.hrep, _snap_to_data(X, poly, eps), poly.rec_dirs)
    normals = []
    for h in poly.hrep:
        a = next(a for g, a in cand if g is h)
        normals.append(Normal(h.w, h.q, a))
    return TukeyRegion(p, K, poly, tuple(normals), steps)


def _snap_to_data(X, poly: Polyhedron2, eps: float) -> tuple:
    """Vertices of ``poly``, each replaced by a data point on two of its facet lines if there is one."""
    on = np.array([np.abs(_scal(X.xy, h.w) - h.q) <= eps for h in poly.hrep]).reshape(len(poly.hrep), X.n)
    out = []
    for v in poly.vertices:
        v = np.array([v.x, v.y])
        tight = [k for k, h in enumerate(poly.hrep) if abs(h.w[0] * v[0] + h.w[1] * v[1] - h.q) <= 1e-7 * np.hypot(*h.w)]
        hit = np.flatnonzero(on[tight].sum(axis=0) >= 2) if len(tight) >= 2 else np.array([], dtype=int)
        if hit.size:
            d = np.abs(X.xy[hit] - v).max(axis=1)
            j = int(np.argmin(d))
            if d[j] <= 1e-7 * (1.0 + np.abs(v).max()):
                v = X.xy[hit[j]]
        out.append((float(v[0]), float(v[1])))
    return _sort_points(out)


def tukey_region(X, p: float, eps: float = EPS) -> Polyhedron2:
    """Tukey depth region ``{z : depth(z) >= ceil(N p)}`` as a bounded polygon, possibly empty."""
    return tukey_region_full(X, p, eps).poly
