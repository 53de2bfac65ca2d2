"""Cones, dual cones, halfspaces and a small 2D polyhedron engine.

Vectors are plain ``(x, y)`` float tuples at the API boundary; numpy is used
internally. All comparisons use an absolute tolerance on scalar products
(``EPS``) unless the caller overrides it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DegenerateCone, EmptyInput, OutOfRange, UnsupportedCone

EPS = 1e-9
EPS_RANK = 1e-12


def _vec(v) -> tuple:
    x, y = v
    return (float(x), float(y))


def _dot(u, v) -> float:
    return u[0] * v[0] + u[1] * v[1]


def _cross(u, v) -> float:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y

    def __getitem__(self, i):
        return (self.x, self.y)[i]

    def __len__(self):
        return 2


@dataclass(frozen=True)
class ConeV:
    """Closed convex cone generated by two linearly independent vectors."""

    b1: tuple
    b2: tuple

    def __post_init__(self):
        b1, b2 = _vec(self.b1), _vec(self.b2)
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "b2", b2)
        n1, n2 = math.hypot(*b1), math.hypot(*b2)
        if not all(math.isfinite(c) for c in b1 + b2):
            raise ValueError("non-finite cone generator")
        if n1 == 0.0 or n2 == 0.0:
            raise UnsupportedCone("a zero generator gives a ray or the point cone {0}")
        # sine of the angle between the generators
        if abs(_cross(b1, b2)) <= EPS_RANK * n1 * n2:
            if _dot(b1, b2) < 0.0:
                raise UnsupportedCone("opposite generators span a line")
            raise DegenerateCone("cone generators are linearly dependent")

    def contains(self, c, eps: float = EPS) -> bool:
        base = dual_base(self)
        return _dot(base.v1, c) >= -eps and _dot(base.v2, c) >= -eps


ORTHANT = ConeV((1.0, 0.0), (0.0, 1.0))


@dataclass(frozen=True)
class DualBase:
    """Segment ``{(1-s) v1 + s v2 : s in [0, 1]}`` generating a dual cone."""

    v1: tuple
    v2: tuple

    def __post_init__(self):
        v1, v2 = _vec(self.v1), _vec(self.v2)
        object.__setattr__(self, "v1", v1)
        object.__setattr__(self, "v2", v2)
        if abs(_cross(v1, v2)) <= EPS_RANK * math.hypot(*v1) * math.hypot(*v2):
            raise DegenerateCone("dual generators are linearly dependent")


def dual_base(cone: ConeV) -> DualBase:
    """H-representation of ``cone``: ``v1`` is orthogonal to ``b1``, ``v2`` to ``b2``.

    The signs are flipped jointly when needed so that ``v1 . b2 >= 0`` and
    ``v2 . b1 >= 0``.
    """
    (b1x, b1y), (b2x, b2y) = cone.b1, cone.b2
    v1 = (b1y, -b1x)
    v2 = (-b2y, b2x)
    if _dot(v1, cone.b2) < 0.0 or _dot(v2, cone.b1) < 0.0:
        v1 = (-b1y, b1x)
        v2 = (b2y, -b2x)
    return DualBase(v1, v2)


def weight_at(base: DualBase, s: float) -> tuple:
    if not 0.0 <= s <= 1.0:
        raise OutOfRange(f"segment parameter {s} outside [0, 1]")
    (ax, ay), (bx, by) = base.v1, base.v2
    return ((1.0 - s) * ax + s * bx, (1.0 - s) * ay + s * by)


def segment_parameter(base: DualBase, w, eps: float = EPS) -> float:
    """Position ``s`` of the ray through ``w`` on the segment of ``base``.

    Raises ``OutOfRange`` when ``w`` is not in the cone spanned by the segment.
    """
    v1, v2 = base.v1, base.v2
    det = _cross(v1, v2)
    alpha = _cross(w, v2) / det
    beta = _cross(v1, w) / det
    scale = math.hypot(*w) / max(math.hypot(*v1), math.hypot(*v2))
    if alpha < -eps * scale or beta < -eps * scale or alpha + beta <= 0.0:
        raise OutOfRange(f"normal {tuple(w)} is outside the dual cone")
    return min(1.0, max(0.0, beta / (alpha + beta)))


@dataclass(frozen=True)
class AffineMap:
    """Linear map ``A`` sending the cone generators to the unit vectors."""

    A: np.ndarray
    A_inv: np.ndarray

    @staticmethod
    def _map(M, z) -> np.ndarray:
        # written out so a point and the same point inside a batch round identically
        z = np.asarray(z, dtype=float)
        x, y = z[..., 0], z[..., 1]
        return np.stack([M[0, 0] * x + M[0, 1] * y, M[1, 0] * x + M[1, 1] * y], axis=-1)

    def apply(self, z) -> np.ndarray:
        return self._map(self.A, z)

    def apply_inverse(self, z) -> np.ndarray:
        return self._map(self.A_inv, z)

    def apply_dual(self, w) -> np.ndarray:
        """Image of a normal vector: ``A^{-T} w`` keeps ``w . z`` invariant."""
        return np.asarray(w, dtype=float) @ self.A_inv


def standardizer(cone: ConeV) -> AffineMap:
    (b1x, b1y), (b2x, b2y) = cone.b1, cone.b2
    det = b1x * b2y - b1y * b2x
    if abs(det) <= EPS_RANK:
        raise DegenerateCone("cone generators are linearly dependent")
    A_inv = np.array([[b1x, b2x], [b1y, b2y]])
    A = np.array([[b2y, -b2x], [-b1y, b1x]]) / det
    A.setflags(write=False)
    A_inv.setflags(write=False)
    return AffineMap(A, A_inv)


@dataclass(frozen=True)
class Halfspace:
    """The closed set ``{z : w . z >= q}``."""

    w: tuple
    q: float

    def __post_init__(self):
        w = _vec(self.w)
        if w == (0.0, 0.0):
            raise ValueError("halfspace normal must be nonzero")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "q", float(self.q))

    def slack(self, z) -> float:
        return _dot(self.w, z) - self.q

    def contains(self, z, eps: float = EPS) -> bool:
        return self.slack(z) >= -eps


@dataclass(frozen=True)
class Polyhedron2:
    """Convex polyhedron in H- and V-representation.

    ``vertices`` are sorted by x, then y. ``rec_dirs`` holds the two generators
    of the recession cone, or ``None`` for a bounded set. ``empty`` marks the
    empty set, in which case both representations are empty.
    """

    hrep: tuple
    vertices: tuple
    rec_dirs: Optional[tuple] = None
    empty: bool = False

    @property
    def is_empty(self) -> bool:
        return self.empty

    def contains(self, z, eps: float = EPS) -> bool:
        return contains(self, z, eps)

    def boundary_chain(self) -> list:
        """Vertices in boundary order (hrep order for cones, counter-clockwise otherwise)."""
        if self.empty or not self.vertices:
            return []
        if self.rec_dirs is not None:
            pts = [_line_meet(h, g) for h, g in zip(self.hrep, self.hrep[1:])]
            return [Point2(*p) for p in pts if p is not None]
        v = np.array([tuple(p) for p in self.vertices])
        c = v.mean(axis=0)
        order = np.argsort(np.arctan2(v[:, 1] - c[1], v[:, 0] - c[0]), kind="stable")
        return [self.vertices[i] for i in order]


def contains(poly: Polyhedron2, z, eps: float = EPS) -> bool:
    if poly.empty:
        return False
    return all(h.contains(z, eps) for h in poly.hrep)


def _line_meet(h: Halfspace, g: Halfspace):
    """Intersection of the two boundary lines, ``None`` when parallel."""
    det = _cross(h.w, g.w)
    if det == 0.0:
        return None
    x = (h.q * g.w[1] - g.q * h.w[1]) / det
    y = (h.w[0] * g.q - g.w[0] * h.q) / det
    return (x, y)


def _sort_points(points: Iterable) -> tuple:
    # adding 0.0 turns -0.0 into 0.0
    return tuple(Point2(*p) for p in sorted((float(p[0]) + 0.0, float(p[1]) + 0.0) for p in points))


def intersect_halfspaces(hs: Sequence[Halfspace], rec_dirs=None, eps: float = EPS) -> Polyhedron2:
    """Intersect halfspaces, returning the minimal H-representation and the vertices.

    With ``rec_dirs = (r1, r2)`` every normal must lie in the dual of the cone
    generated by ``r1, r2`` and the result has that recession cone. With
    ``rec_dirs=None`` the intersection must be bounded (or empty).
    """
    hs = list(hs)
    if not hs:
        raise EmptyInput("no halfspaces to intersect")
    if rec_dirs is None:
        return _intersect_bounded(hs, eps)
    keep = minimal_chain(hs, rec_dirs, eps)
    kept = tuple(hs[i] for i in keep)
    verts = [_line_meet(h, g) for h, g in zip(kept, kept[1:])]
    rec = (_vec(rec_dirs[0]), _vec(rec_dirs[1]))
    return Polyhedron2(kept, _sort_points(p for p in verts if p is not None), rec)


def minimal_chain(hs: Sequence[Halfspace], rec_dirs, eps: float = EPS) -> list:
    """Indices of the irredundant halfspaces, in angular order along the dual segment."""
    base = dual_base(ConeV(rec_dirs[0], rec_dirs[1]))
    ts = [segment_parameter(base, h.w) for h in hs]
    order = sorted(range(len(hs)), key=lambda i: (ts[i], i))

    # parallel normals: keep the most restrictive offset
    uniq = []
    for i in order:
        if uniq and abs(ts[i] - ts[uniq[-1]]) <= 1e-12:
            j = uniq[-1]
            if hs[i].q / math.hypot(*hs[i].w) > hs[j].q / math.hypot(*hs[j].w) + eps:
                uniq[-1] = i
            continue
        uniq.append(i)

    stack: list = []
    for i in uniq:
        while len(stack) >= 2:
            p = _line_meet(hs[stack[-2]], hs[i])
            if p is None or hs[stack[-1]].slack(p) >= -eps:
                stack.pop()
            else:
                break
        stack.append(i)
    return stack


def _clip(poly: list, h: Halfspace, tol: float) -> list:
    if not poly:
        return poly
    vals = [h.slack(p) for p in poly]
    out = []
    n = len(poly)
    for k in range(n):
        p, vp = poly[k], vals[k]
        q, vq = poly[(k + 1) % n], vals[(k + 1) % n]
        p_in, q_in = vp >= -tol, vq >= -tol
        if p_in:
            out.append(p)
        if p_in != q_in and n > 1:
            # only a genuine sign change yields a new point
            if (vp > 0.0 and not q_in) or (vq > 0.0 and not p_in):
                lam = vp / (vp - vq)
                out.append((p[0] + lam * (q[0] - p[0]), p[1] + lam * (q[1] - p[1])))
    return _dedupe_ring(out, tol)


def _dedupe_ring(pts: list, tol: float) -> list:
    out = []
    for p in pts:
        if not out or math.hypot(p[0] - out[-1][0], p[1] - out[-1][1]) > tol:
            out.append(p)
    while len(out) > 1 and math.hypot(out[0][0] - out[-1][0], out[0][1] - out[-1][1]) <= tol:
        out.pop()
    return out


def _clip_all(hs, box: float, center, tol: float) -> list:
    cx, cy = center
    poly = [(cx - box, cy - box), (cx + box, cy - box), (cx + box, cy + box), (cx - box, cy + box)]
    for h in hs:
        poly = _clip(poly, h, tol)
        if not poly:
            break
    return poly


def _intersect_bounded(hs: list, eps: float) -> Polyhedron2:
    unit = [Halfspace((h.w[0] / math.hypot(*h.w), h.w[1] / math.hypot(*h.w)), h.q / math.hypot(*h.w)) for h in hs]
    scale = 1.0 + max(abs(h.q) for h in unit)
    box = 1e6 * scale
    rough = _clip_all(unit, box, (0.0, 0.0), 1e-12 * box)
    if not rough:
        return Polyhedron2((), (), None, empty=True)
    arr = np.array(rough)
    if np.abs(arr).max() >= 0.5 * box:
        raise ValueError("halfspace intersection is unbounded")

    # second pass from a tight box to recover full precision
    lo, hi = arr.min(axis=0), arr.max(axis=0)
    center = (lo + hi) / 2.0
    half = 0.6 * float((hi - lo).max()) + 1e-6 * scale
    tol = eps * max(1.0, float(np.abs(arr).max()))
    poly = _clip_all(unit, half, tuple(center), tol)
    if not poly:
        return Polyhedron2((), (), None, empty=True)
    poly = _dedupe_ring(poly, 10 * tol)

    # keep one halfspace per supporting direction: an edge for a proper polygon,
    # every tight direction for a degenerate (point or segment) region
    need = 2 if len(poly) >= 3 else 1
    kept, seen = [], []
    for h, u in zip(hs, unit):
        tight = sum(1 for p in poly if abs(u.slack(p)) <= 10 * tol)
        if tight < need:
            continue
        if any(abs(_cross(u.w, s)) <= 1e-12 and _dot(u.w, s) > 0 for s in seen):
            continue
        seen.append(u.w)
        kept.append(h)
    return Polyhedron2(tuple(kept), _sort_points(_snap(poly, kept, 10 * tol)), None)


def _snap(poly: list, hs: list, tol: float) -> list:
    """Replace clipped vertices by the exact meet of their two most transversal tight lines."""
    out = []
    for p in poly:
        tight = [h for h in hs if abs(h.slack(p)) <= tol * math.hypot(*h.w)]
        best, meet = 1e-12, p
        for i in range(len(tight)):
            for j in range(i + 1, len(tight)):
                g, h = tight[i], tight[j]
                sin = abs(_cross(g.w, h.w)) / (math.hypot(*g.w) * math.hypot(*h.w))
                if sin > best:
                    best, meet = sin, _line_meet(g, h)
        out.append(meet)
    return out
