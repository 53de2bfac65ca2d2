"""Scalarization, stable index sorts, tie bookkeeping and the rotation step.

Indices are 0-based throughout. A permutation ``pi`` lists data indices in
ascending scalarized order; position ``K`` in the text of the algorithms
(1-based) is ``pi[K - 1]`` here.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, InvalidState
from .geometry import EPS, Point2

EPS_S = 1e-12


class DataSet:
    """Indexed bivariate sample; insertion order is preserved and matters for ties."""

    def __init__(self, points):
        xy = np.array(points, dtype=float)
        if xy.size == 0:
            raise EmptyInput("data set is empty")
        xy = xy.reshape(-1, 2)
        if not np.isfinite(xy).all():
            raise ValueError("data points must be finite")
        xy.setflags(write=False)
        self._xy = np.ascontiguousarray(xy)

    @property
    def xy(self) -> np.ndarray:
        return self._xy

    @property
    def n(self) -> int:
        return self._xy.shape[0]

    def __len__(self):
        return self.n

    def __getitem__(self, i) -> Point2:
        return Point2(*self._xy[i])

    def __iter__(self):
        return (Point2(x, y) for x, y in self._xy)

    def __repr__(self):
        return f"DataSet(n={self.n})"

    def indices_of(self, z) -> np.ndarray:
        """Indices of exact copies of ``z``."""
        return np.flatnonzero((self._xy[:, 0] == z[0]) & (self._xy[:, 1] == z[1]))

    def appended(self, z) -> "DataSet":
        return DataSet(np.vstack([self._xy, [tuple(z)]]))


def as_dataset(X) -> DataSet:
    return X if isinstance(X, DataSet) else DataSet(X)


@dataclass(frozen=True)
class BoundaryPartition:
    below: np.ndarray
    equal: np.ndarray

    @property
    def k(self) -> int:
        return len(self.below)

    @property
    def L(self) -> int:
        return len(self.equal)


@dataclass(frozen=True)
class RotationOutcome:
    s_bar: float
    w_next: tuple


def index_sort(values) -> np.ndarray:
    return np.argsort(np.asarray(values, dtype=float), kind="stable")


def _scal(xy: np.ndarray, w) -> np.ndarray:
    # written out so the compiled kernels round identically
    return xy[:, 0] * w[0] + xy[:, 1] * w[1]


def scalarize(X, w) -> np.ndarray:
    return _scal(as_dataset(X).xy, w)


def boundary_partition(X, w, anchor, eps: float = EPS) -> BoundaryPartition:
    X = as_dataset(X)
    d = _scal(X.xy, w) - (w[0] * anchor[0] + w[1] * anchor[1])
    return BoundaryPartition(np.flatnonzero(d < -eps), np.flatnonzero(np.abs(d) <= eps))


def run_keys(keys, eps: float = EPS) -> np.ndarray:
    """Replace each sorted key by the first key of its run of gaps ``<= eps``."""
    keys = np.asarray(keys, dtype=float)
    if keys.size == 0:
        return keys
    starts = np.concatenate([[True], np.diff(keys) > eps])
    return keys[np.flatnonzero(starts)[np.cumsum(starts) - 1]]


def reorder_ties(pi, part: BoundaryPartition, X, v2, eps: float = EPS) -> np.ndarray:
    """Re-sort the tie block of ``pi`` by ``v2 . x``.

    Values within ``eps`` of each other stay tied along the whole segment and
    are kept in index order.
    """
    X = as_dataset(X)
    pi = np.array(pi)
    pos = np.flatnonzero(np.isin(pi, part.equal))
    if len(pos) < 2:
        return pi
    block = pi[pos]
    order = np.lexsort((block, _scal(X.xy[block], v2)))
    block = block[order]
    lead = run_keys(_scal(X.xy[block], v2), eps)
    pi[pos] = block[np.lexsort((block, lead))]
    return pi


def rotation_step(X, w, v2, pi, K: int, *, tied=None, eps: float = EPS, eps_s: float = EPS_S) -> RotationOutcome:
    """Largest ``s`` in (0, 1] keeping ``x[pi[K-1]]`` on the boundary of the ``w(s)``-quantile.

    ``w(s) = (1 - s) w + s v2``. Points before position ``K`` must stay in the
    closed lower halfspace and points after it in the upper one. ``tied`` is a
    boolean mask of the tie block at ``w``; by default it is ``|w . u| <= eps``.
    """
    X = as_dataset(X)
    pi = np.asarray(pi)
    n = X.n
    if not 1 <= K <= n:
        raise ValueError(f"K={K} outside 1..{n}")
    anchor = pi[K - 1]
    u = X.xy - X.xy[anchor]
    a = _scal(u, w)
    c = _scal(u, v2)
    rank = np.empty(n, dtype=np.int64)
    rank[pi] = np.arange(n)
    before = rank < K - 1
    after = rank > K - 1
    if tied is None:
        tied = np.abs(a) <= eps
    tied = np.asarray(tied, dtype=bool)

    if np.any(tied & before & (c > eps)) or np.any(tied & after & (c < -eps)):
        raise InvalidState("tie block is not ordered by the second dual generator")

    free = ~tied
    # offsets within eps along v2 never cross before the end of the segment
    cross = free & ((before & (c > eps)) | (after & (c < -eps)))
    s_bar = 1.0
    if cross.any():
        s = a[cross] / (a[cross] - c[cross])
        s = s[s > eps_s]
        if s.size:
            s_bar = min(1.0, float(s.min()))
    if s_bar >= 1.0:
        return RotationOutcome(1.0, (float(v2[0]), float(v2[1])))
    w_next = ((1.0 - s_bar) * w[0] + s_bar * v2[0], (1.0 - s_bar) * w[1] + s_bar * v2[1])
    return RotationOutcome(s_bar, w_next)
