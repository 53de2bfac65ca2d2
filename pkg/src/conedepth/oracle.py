"""Brute-force reference implementations.

These enumerate every direction at which a count can change instead of
sweeping, so they share no logic with the sweep kernels. They are slow
(cubic in N) and meant for N up to about 50.
"""
from __future__ import annotations

import math

import numpy as np

from .geometry import EPS, ConeV, DualBase, dual_base
from .quantile import level
from .sweep import as_dataset


def candidate_directions(z, X, base: DualBase) -> np.ndarray:
    """Segment parameters where some ``x - z`` is orthogonal to ``w(t)``, plus both endpoints."""
    X = as_dataset(X)
    u = X.xy - np.asarray(z, dtype=float)
    a = u @ np.asarray(base.v1)
    c = u @ np.asarray(base.v2)
    flip = (a * c < 0.0)
    ts = a[flip] / (a[flip] - c[flip])
    return np.unique(np.concatenate([[0.0, 1.0], ts]))


def oracle_min_counts(zs, X, base: DualBase, eps: float = EPS) -> np.ndarray:
    """``min over w in the segment of #{x in X : w . x <= w . z}`` for each row of ``zs``.

    ``z`` itself is not added to the sample.
    """
    X = as_dataset(X)
    zs = np.asarray(zs, dtype=float).reshape(-1, 2)
    v1, v2 = np.asarray(base.v1), np.asarray(base.v2)
    U = X.xy[None, :, :] - zs[:, None, :]
    A = U @ v1
    C = U @ v2
    m, n = A.shape
    # pad rows with the endpoint 1.0 so every row has the same number of candidates
    T = np.ones((m, n + 2))
    T[:, 0] = 0.0
    flip = A * C < 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        cand = np.where(flip, A / (A - C), 1.0)
    T[:, 2:] = cand
    T.sort(axis=1)
    # counts are constant on each open arc between candidates; probe every arc at its
    # midpoint (a single global offset fails when two candidates are one ulp apart)
    P = np.concatenate([T, 0.5 * (T[:, 1:] + T[:, :-1])], axis=1)
    vals = (1.0 - P)[:, :, None] * A[:, None, :] + P[:, :, None] * C[:, None, :]
    counts = np.count_nonzero(vals <= eps, axis=2)
    return counts.min(axis=1)


def oracle_cone_depth(z, X, cone: ConeV, eps: float = EPS) -> int:
    """Cone location depth of ``z`` counted in ``X`` augmented by ``z`` unless ``z`` is a data point."""
    X = as_dataset(X)
    k = int(oracle_min_counts([tuple(z)], X, dual_base(cone), eps)[0])
    return k if X.indices_of(z).size else k + 1


def oracle_quantile_membership(z, X, cone: ConeV, p: float, eps: float = EPS) -> bool:
    X = as_dataset(X)
    return bool(oracle_min_counts([tuple(z)], X, dual_base(cone), eps)[0] >= level(X.n, p))


def oracle_tukey_depth(z, X, eps: float = EPS) -> int:
    """Halfspace depth by a circular scan over the directions around ``z``.

    The count of the closed halfplane ``{x : u . (x - z) <= 0}`` only changes
    when ``u`` is orthogonal to some ``x - z``; those angles and the midpoints
    between them are probed.
    """
    X = as_dataset(X)
    u = X.xy - np.asarray(z, dtype=float)
    same = (u[:, 0] == 0.0) & (u[:, 1] == 0.0)
    if same.all():
        return X.n
    th = np.arctan2(u[~same, 1], u[~same, 0])
    crit = np.sort(np.mod(np.concatenate([th + math.pi / 2, th - math.pi / 2]), 2 * math.pi))
    nxt = np.append(crit[1:], crit[0] + 2 * math.pi)
    angles = np.concatenate([crit, 0.5 * (crit + nxt)])
    dirs = np.column_stack([np.cos(angles), np.sin(angles)])
    counts = np.count_nonzero(dirs @ u.T <= eps, axis=1)
    return int(counts.min())


def hull_plus_cone_vertices(X, cone: ConeV) -> np.ndarray:
    """Vertices of ``conv(X) + C``, sorted by x then y."""
    from scipy.spatial import ConvexHull

    X = as_dataset(X)
    xy = np.unique(X.xy, axis=0)
    span = float(np.ptp(xy, axis=0).max()) + 1.0
    b1 = np.asarray(cone.b1) / math.hypot(*cone.b1)
    b2 = np.asarray(cone.b2) / math.hypot(*cone.b2)
    far = 100.0 * span
    pts = np.vstack([xy, xy + far * b1, xy + far * b2])
    hull = ConvexHull(pts)
    idx = np.sort(hull.vertices[hull.vertices < len(xy)])
    v = xy[idx]
    return v[np.lexsort((v[:, 1], v[:, 0]))]
