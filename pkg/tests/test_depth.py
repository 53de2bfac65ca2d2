import numpy as np
import pytest
from conftest import lattice, random_cone
from hypothesis import given, settings
from hypothesis import strategies as st

from conedepth import (
    ORTHANT,
    TUKEY_SEGMENTS,
    ConeV,
    OutOfRange,
    cone_cdf,
    cone_cdf_grid,
    cone_cdf_many,
    cone_depth,
    cone_quantile,
    dual_base,
    standardizer,
    tukey_depth,
    tukey_region,
    w_depth,
    weight_at,
)
from conedepth.depth import tukey_region_full
from conedepth.oracle import oracle_tukey_depth

CHAIN = [(0, 0), (1, 1), (2, 2)]
TWO = [(0, 2), (2, 0)]
SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_w_depth_examples():
    assert w_depth((1, 1), CHAIN, (1, 0)) == 2
    assert w_depth((2, 2), TWO, (0.5, 0.5)) == 2
    assert w_depth((-10, -10), TWO, (0.5, 0.5)) == 0


def test_depth_dominating_fresh_point():
    r = cone_depth((2, 2), TWO, ORTHANT)
    assert (r.K, r.F, r.z_was_original, r.n) == (3, 1.0, False, 3)


def test_depth_below_everything():
    r = cone_depth((0, 0), TWO, ORTHANT)
    assert (r.K, r.F) == (1, 0.0)
    assert w_depth((0, 0), TWO, r.argmin_w) == 0


def test_depth_of_original_point_on_chain():
    r = cone_depth((1, 1), CHAIN, ORTHANT)
    assert (r.K, r.z_was_original) == (2, True)
    assert r.F == pytest.approx(2 / 3, abs=1e-15)


def test_cdf_formula_branches():
    X = [(float(i), float(i)) for i in range(20)]
    # original point with K = 4 among 20
    assert cone_cdf((3, 3), X, ORTHANT) == 0.2
    assert cone_cdf((0, 0.5), TWO, ORTHANT) == 0.0
    assert cone_cdf((50, 50), X, ORTHANT) == 1.0


def test_duplicates_of_z_count_once_each():
    X = [(1, 1), (0, 3), (1, 1), (3, 0)]
    r = cone_depth((1, 1), X, ORTHANT)
    assert r.z_was_original
    assert r.K == 2
    assert r.n == 4


def test_single_point_sample():
    r = cone_depth((5, 5), [(5, 5)], ORTHANT)
    assert (r.K, r.F) == (1, 1.0)
    r = cone_depth((0, 0), [(5, 5)], ORTHANT)
    assert (r.K, r.F) == (1, 0.0)


def test_argmin_direction_attains_depth():
    rng = np.random.default_rng(7)
    for _ in range(100):
        X = lattice(rng, int(rng.integers(3, 20)), 10)
        cone = random_cone(rng, 0.2)
        z = tuple(rng.integers(0, 11, size=2).astype(float))
        r = cone_depth(z, X, cone)
        count = w_depth(z, X, r.argmin_w) + (0 if r.z_was_original else 1)
        assert count == r.K


def test_depth_is_upper_bounded_by_w_depth():
    rng = np.random.default_rng(8)
    for _ in range(100):
        X = lattice(rng, int(rng.integers(3, 20)), 10)
        cone = random_cone(rng, 0.2)
        base = dual_base(cone)
        z = tuple(rng.integers(0, 11, size=2).astype(float))
        r = cone_depth(z, X, cone)
        extra = 0 if r.z_was_original else 1
        for s in np.linspace(0, 1, 17):
            assert r.K <= w_depth(z, X, weight_at(base, s)) + extra


def test_affine_invariance_of_depth():
    rng = np.random.default_rng(9)
    for _ in range(100):
        X = lattice(rng, int(rng.integers(3, 20)), 10)
        cone = random_cone(rng, 0.2)
        A = standardizer(cone)
        z = rng.integers(0, 11, size=2).astype(float)
        assert cone_depth(z, X, cone).K == cone_depth(A.apply(z), A.apply(X), ORTHANT).K


def test_quantile_duality_on_grid():
    rng = np.random.default_rng(10)
    g = np.linspace(-0.5, 10.5, 12)
    grid = np.array([(x, y) for y in g for x in g])
    for _ in range(20):
        X = rng.uniform(0, 10, size=(int(rng.integers(3, 15)), 2))
        cone = random_cone(rng, 0.2)
        F = cone_cdf_many(grid, X, cone)
        for p in np.arange(1, 10) / 10:
            res, _ = cone_quantile(X, cone, p)
            for z, f in zip(grid, F):
                assert (f >= p) == res.poly.contains(z)


def test_cdf_many_matches_single_calls():
    rng = np.random.default_rng(11)
    X = lattice(rng, 15, 10)
    cone = random_cone(rng, 0.2)
    zs = np.vstack([X[:5], rng.integers(0, 11, size=(20, 2)).astype(float)])
    F = cone_cdf_many(zs, X, cone, workers=3)
    assert F.tolist() == [cone_cdf(tuple(z), X, cone) for z in zs]


def test_grid_layout():
    pts, F = cone_cdf_grid(TWO, ORTHANT, (0, 2, 0, 4), 3, 2)
    assert pts.tolist() == [[0, 0], [1, 0], [2, 0], [0, 4], [1, 4], [2, 4]]
    assert F.tolist() == [cone_cdf(tuple(p), TWO, ORTHANT) for p in pts]
    pts, F = cone_cdf_grid(TWO, ORTHANT, (-1, 5, -1, 5), 1, 1)
    assert pts.tolist() == [[-1, -1]] and F.tolist() == [0.0]


# --- Tukey mode -------------------------------------------------------------


def test_tukey_segments_cover_all_directions():
    angles = np.linspace(0, 2 * np.pi, 721)
    for a in angles:
        u = np.array([np.cos(a), np.sin(a)])
        covered = False
        for b in TUKEY_SEGMENTS:
            M = np.column_stack([b.v1, b.v2])
            lam = np.linalg.solve(M, u)
            covered |= bool((lam >= -1e-12).all())
        assert covered


def test_tukey_depth_examples():
    tri = [(0, 0), (2, 0), (1, 2)]
    assert tukey_depth((0, 0), tri) == 1
    assert tukey_depth((1, 0.5), tri) == oracle_tukey_depth((1, 0.5), tri) == 1
    assert tukey_depth((0, 0), [(0, 0)]) == 1
    assert tukey_depth((5, 5), tri) == 0


def test_tukey_depth_matches_pairwise_directions():
    rng = np.random.default_rng(12)
    for _ in range(50):
        X = lattice(rng, int(rng.integers(2, 15)), 8)
        z = rng.integers(0, 9, size=2).astype(float)
        dirs = [(1, 0), (-1, 0), (0, 1), (0, -1)]
        pts = np.vstack([X, z])
        for i in range(len(pts)):
            for j in range(len(pts)):
                d = pts[i] - pts[j]
                if d.any():
                    dirs += [(d[1], -d[0]), (-d[1], d[0])]
        brute = min(w_depth(z, X, w) for w in dirs)
        # the minimum may sit strictly between two critical normals
        assert tukey_depth(z, X) <= brute
        assert tukey_depth(z, X) == oracle_tukey_depth(z, X)


def test_tukey_region_examples():
    poly = tukey_region([(3, 7)], 1.0)
    assert [tuple(v) for v in poly.vertices] == [(3.0, 7.0)]
    poly = tukey_region(SQUARE, 0.25)
    assert [tuple(v) for v in poly.vertices] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(poly.hrep) == 4
    assert tukey_region(SQUARE, 0.75).is_empty
    # vertices at data points are reported exactly
    kite = [(0, 3), (1, 1), (3, 0), (2, 2)]
    assert [tuple(v) for v in tukey_region(kite, 0.25).vertices] == [(0, 3), (1, 1), (2, 2), (3, 0)]
    with pytest.raises(OutOfRange):
        tukey_region(SQUARE, 0.0)


def test_tukey_region_membership_matches_depth():
    rng = np.random.default_rng(13)
    g = np.linspace(-0.25, 10.25, 15)
    grid = [(x, y) for y in g for x in g]
    for _ in range(15):
        X = rng.uniform(0, 10, size=(int(rng.integers(3, 20)), 2))
        for p in (0.1, 0.25, 0.4):
            reg = tukey_region_full(X, p)
            for z in grid:
                inside = reg.poly.contains(z)
                margin = min((abs(h.slack(z)) / np.hypot(*h.w) for h in reg.poly.hrep), default=1.0)
                if margin > 1e-7:
                    assert inside == (oracle_tukey_depth(z, X) >= reg.K)


# --- properties -------------------------------------------------------------


@settings(max_examples=300, deadline=None)
@given(
    st.lists(st.tuples(st.integers(0, 10), st.integers(0, 10)), min_size=1, max_size=15),
    st.tuples(st.integers(0, 10), st.integers(0, 10)),
    st.tuples(st.floats(0, 5), st.floats(0, 5)),
)
def test_monotone_along_the_cone(points, z, lam):
    cone = ConeV((1, 0.3), (-0.2, 1))
    z = np.asarray(z, dtype=float)
    z2 = z + lam[0] * np.asarray(cone.b1) + lam[1] * np.asarray(cone.b2)
    assert cone_cdf(tuple(z2), points, cone) >= cone_cdf(tuple(z), points, cone)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 10), st.integers(0, 10)), min_size=1, max_size=15))
def test_dominating_point_has_full_depth(points):
    X = np.asarray(points, dtype=float)
    z = tuple(X.max(axis=0) + 1)
    r = cone_depth(z, X, ORTHANT)
    assert r.K == r.n and r.F == 1.0


def test_point_on_boundary_ray_keeps_its_generator():
    # z2 = x + lam * b2 sits on the boundary ray of x + C; rounding in v2 . z2
    # must not push x out of the worst halfspace near the end of the segment
    from conedepth import kernels

    cone = ConeV((0.1780600818362494, 0.23332070694060292), (2.4504993275728366, 1.1943246457946253))
    x = np.array([16.0, 0.0])
    z2 = x + 2.1775912371917316 * np.asarray(cone.b2)
    X = np.array(
        [[6, 0], [1, 11], [6, 19], [16, 0], [16, 9], [15, 13], [20, 10], [3, 2], [5, 10], [1, 1],
         [0, 1], [7, 7], [2, 3], [8, 10], [11, 19], [2, 4], [1, 20], [15, 7], [1, 17]],
        dtype=float,
    )
    base = dual_base(cone)
    for impl in (kernels.pure, kernels.active):
        K = impl.depth_sweep(X, tuple(z2), -1, base.v1, base.v2)[0]
        assert K - 1 == min(w_depth(z2, X, weight_at(base, s)) for s in np.linspace(0, 1, 101))
    assert cone_cdf(tuple(z2), X, cone) >= cone_cdf(tuple(x), X, cone)
