"""Pure-Python sweep kernels.

Each rotation step re-sorts the data, reorders the tie block and solves the
rotation problem with the primitives from :mod:`conedepth.sweep`. This is the
fallback when the compiled extension is unavailable, and the reference the
compiled kernels are tested against.

Both backends expose the same functions with the same return values:

``depth_sweep(xy, z, iz, v1, v2, eps)``
    ``(K, t_lo, t_hi, steps)``: the cone location depth of ``z`` counted in the
    data augmented by ``z`` (``iz = -1``) or with ``z = xy[iz]``; ``(t_lo, t_hi)``
    is the first segment interval on which the minimum is attained.
``depth_many(xy, zs, v1, v2, eps)``
    ``(K, original)`` arrays for many query points.
``quantile_sweep(xy, K, v1, v2, eps)``
    ``(ts, qs, anchors, counts)`` for the visited directions ``w(t)``.
"""
from __future__ import annotations

import numpy as np

from .errors import InvalidState
from .geometry import EPS
from .sweep import EPS_S, BoundaryPartition, _scal, index_sort, reorder_ties, rotation_step

COMPILED = False


def _w(v1, v2, t):
    return ((1.0 - t) * v1[0] + t * v2[0], (1.0 - t) * v1[1] + t * v2[1])


def _advance(t, s_bar):
    if s_bar >= 1.0:
        return 1.0
    t_new = t + s_bar * (1.0 - t)
    if t_new <= t:
        t_new = float(np.nextafter(t, 2.0))
    return min(t_new, 1.0)


def _max_steps(n):
    return n * (n - 1) // 2 + 3


def depth_sweep(xy, z, iz, v1, v2, eps=EPS, eps_s=EPS_S):
    xy = np.asarray(xy, dtype=float)
    if iz < 0:
        xy = np.vstack([xy, [z]])
        iz = xy.shape[0] - 1
    n = xy.shape[0]
    t, w = 0.0, tuple(v1)
    k_min, t_lo, t_hi = n + 1, 0.0, 1.0
    steps = 0
    while True:
        vals = _scal(xy, w)
        d = vals - vals[iz]
        below = d < -eps
        equal = np.abs(d) <= eps
        if t >= 1.0:
            k_n = int(below.sum() + equal.sum())
            if k_n < k_min:
                k_min, t_lo, t_hi = k_n, 1.0, 1.0
            return k_min, t_lo, t_hi, steps
        pi = index_sort(vals)
        pi = reorder_ties(pi, BoundaryPartition(np.flatnonzero(below), np.flatnonzero(equal)), xy, v2, eps)
        k_n = int(np.flatnonzero(pi == iz)[0]) + 1
        out = rotation_step(xy, w, v2, pi, k_n, tied=equal, eps=eps, eps_s=eps_s)
        t_new = _advance(t, out.s_bar)
        if k_n < k_min:
            k_min, t_lo, t_hi = k_n, t, t_new
        steps += 1
        if steps > _max_steps(n):
            raise InvalidState("depth sweep did not reach the end of the segment")
        t, w = t_new, _w(v1, v2, t_new)


def depth_many(xy, zs, v1, v2, eps=EPS):
    xy = np.asarray(xy, dtype=float)
    zs = np.asarray(zs, dtype=float).reshape(-1, 2)
    K = np.empty(len(zs), dtype=np.int64)
    original = np.empty(len(zs), dtype=bool)
    for j, z in enumerate(zs):
        hits = np.flatnonzero((xy[:, 0] == z[0]) & (xy[:, 1] == z[1]))
        iz = int(hits[-1]) if hits.size else -1
        K[j] = depth_sweep(xy, z, iz, v1, v2, eps)[0]
        original[j] = hits.size > 0
    return K, original


def quantile_sweep(xy, K, v1, v2, eps=EPS, eps_s=EPS_S):
    xy = np.asarray(xy, dtype=float)
    n = xy.shape[0]
    t, w = 0.0, tuple(v1)
    ts, qs, anchors, counts = [], [], [], []
    while True:
        vals = _scal(xy, w)
        pi = index_sort(vals)
        q = float(vals[pi[K - 1]])
        d = vals - q
        below = d < -eps
        equal = np.abs(d) <= eps
        count = int(below.sum() + equal.sum())
        if t >= 1.0:
            ts.append(1.0), qs.append(q), anchors.append(int(pi[K - 1])), counts.append(count)
            return ts, qs, anchors, counts
        pi = reorder_ties(pi, BoundaryPartition(np.flatnonzero(below), np.flatnonzero(equal)), xy, v2, eps)
        ts.append(t), qs.append(q), anchors.append(int(pi[K - 1])), counts.append(count)
        out = rotation_step(xy, w, v2, pi, K, tied=equal, eps=eps, eps_s=eps_s)
        if len(ts) > _max_steps(n):
            raise InvalidState("quantile sweep did not reach the end of the segment")
        t = _advance(t, out.s_bar)
        w = _w(v1, v2, t)
