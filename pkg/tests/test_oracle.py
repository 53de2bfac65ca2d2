import numpy as np

from conedepth import ORTHANT, ConeV, dual_base
from conedepth.oracle import (
    candidate_directions,
    hull_plus_cone_vertices,
    oracle_cone_depth,
    oracle_min_counts,
    oracle_quantile_membership,
    oracle_tukey_depth,
)

CHAIN = [(0, 0), (1, 1), (2, 2)]
TWO = [(0, 2), (2, 0)]


def test_candidates_contain_endpoints():
    ts = candidate_directions((0, 0), TWO, dual_base(ORTHANT))
    assert ts[0] == 0.0 and ts[-1] == 1.0
    # both points sit on the axes through z, so no interior crossing
    assert len(ts) == 2
    ts = candidate_directions((1, 1), TWO, dual_base(ORTHANT))
    assert np.allclose(ts, [0, 0.5, 1])


def test_oracle_depth_examples():
    assert oracle_cone_depth((0, 0), TWO, ORTHANT) == 1
    assert oracle_cone_depth((2, 2), CHAIN, ORTHANT) == 3
    assert oracle_cone_depth((-100, -100), CHAIN, ORTHANT) == 1


def test_oracle_finds_minimum_on_open_arc():
    # at z = (1, 1) the counts at w = v1, v2 and (1, 1) are all 2, but near
    # w = (1, 0) only (0, 2) joins and near w = (0, 1) only (2, 0)
    X = [(0, 2), (2, 0), (3, 3)]
    assert oracle_cone_depth((1, 1), X, ORTHANT) == 2
    assert int(oracle_min_counts([(1, 1)], X, dual_base(ORTHANT))[0]) == 1


def test_oracle_membership_examples():
    assert oracle_quantile_membership((1, 1), CHAIN, ORTHANT, 2 / 3)
    assert not oracle_quantile_membership((0.99, 1), CHAIN, ORTHANT, 2 / 3)
    assert oracle_quantile_membership((5, 5), CHAIN, ORTHANT, 1.0)


def test_oracle_tukey_examples():
    tri = [(0, 0), (2, 0), (1, 2)]
    assert oracle_tukey_depth((1, 0.5), tri) == 1
    assert oracle_tukey_depth((0, 0), [(0, 0)]) == 1
    assert oracle_tukey_depth((9, 9), tri) == 0
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert oracle_tukey_depth((0.5, 0.5), square) == 2


def test_hull_plus_cone():
    assert hull_plus_cone_vertices(TWO, ORTHANT).tolist() == [[0, 2], [2, 0]]
    assert hull_plus_cone_vertices(CHAIN, ORTHANT).tolist() == [[0, 0]]
    X = [(0, 3), (1, 1), (3, 0), (2, 2)]
    assert hull_plus_cone_vertices(X, ORTHANT).tolist() == [[0, 3], [1, 1], [3, 0]]
    cone = ConeV((1, 0), (0, -1))
    assert hull_plus_cone_vertices([(0, 0), (1, 1)], cone).tolist() == [[0, 0], [1, 1]]


def test_vectorized_counts_match_scalar_calls():
    rng = np.random.default_rng(3)
    X = rng.integers(0, 10, size=(12, 2)).astype(float)
    zs = rng.integers(0, 10, size=(30, 2)).astype(float)
    base = dual_base(ORTHANT)
    many = oracle_min_counts(zs, X, base)
    assert many.tolist() == [int(oracle_min_counts([z], X, base)[0]) for z in zs]
