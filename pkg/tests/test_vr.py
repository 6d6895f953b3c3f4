import math
from itertools import combinations

import numpy as np
import pytest

from _support import random_cloud
from persista.datasets import synthetic_annulus, unit_square
from persista.exceptions import ValidationError
from persista.persistence import barcode
from persista.vr import (
    AllPairwise, EARTH_RADIUS_KM, Explicit, Metric, PointCloud, UniformGrid, build_vr, enclosing_radius,
    pairwise_distances,
)
from persista.wrcf import Graph, maximal_cliques


def test_identical_points_zero_distance():
    D = pairwise_distances(PointCloud([[1.0, 2.0], [1.0, 2.0]]))
    assert D[0, 1] == 0.0


def test_three_four_five():
    assert pairwise_distances(PointCloud([[0, 0], [3, 4]]))[0, 1] == 5.0


def test_haversine_antipodes():
    pc = PointCloud([[0.0, 0.0], [0.0, 180.0]], geographic=True)
    D = pairwise_distances(pc, "haversine")
    assert D[0, 1] == pytest.approx(math.pi * EARTH_RADIUS_KM, rel=1e-12)
    assert D[0, 1] == pytest.approx(20015.0868, abs=1e-3)


def test_haversine_one_degree_of_latitude():
    # arc length of one degree on a sphere of radius 6371 km
    pc = PointCloud([[51.0, -1.0], [52.0, -1.0]], geographic=True)
    assert pairwise_distances(pc)[0, 1] == pytest.approx(2 * math.pi * 6371.0 / 360, rel=1e-12)


def test_haversine_on_planar_rejected():
    with pytest.raises(ValidationError):
        pairwise_distances(PointCloud([[0, 0], [1, 1]]), Metric.HAVERSINE)


def test_geographic_range_checked():
    with pytest.raises(ValidationError):
        PointCloud([[95.0, 0.0]], geographic=True)


@pytest.mark.parametrize("seed", range(10))
def test_distance_matrix_properties(seed):
    X = np.random.default_rng(seed).normal(size=(9, 3))
    D = pairwise_distances(PointCloud(X), n_jobs=3)
    assert np.array_equal(D, D.T)
    assert np.all(np.diag(D) == 0) and np.all(D >= 0)
    assert np.allclose(D, np.linalg.norm(X[:, None] - X[None], axis=-1))


def test_unit_square_single_loop():
    K = build_vr(unit_square(), eps_max=2, max_dim=1, schedule=AllPairwise())
    (loop,) = barcode(K, max_dim=1).in_dim(1)
    assert loop.birth == pytest.approx(1.0, rel=1e-9)
    assert loop.death == pytest.approx(math.sqrt(2), rel=1e-9)


def test_unit_square_betti_at_1_2():
    b = barcode(build_vr(unit_square(), eps_max=2), max_dim=1)
    assert b.betti_at(1.2, 1) == 1


def test_single_point():
    b = barcode(build_vr(PointCloud([[0.3, 0.1]])), max_dim=1)
    assert b.intervals(0) == [(0.0, math.inf)] and b.intervals(1) == []


def test_enclosing_radius_default():
    D = pairwise_distances(unit_square())
    assert enclosing_radius(D) == pytest.approx(math.sqrt(2))
    K = build_vr(unit_square())
    assert max(K.values) == pytest.approx(math.sqrt(2))


def test_eps_max_must_be_positive():
    with pytest.raises(ValidationError):
        build_vr(unit_square(), eps_max=0)


def test_explicit_schedule_snaps_up():
    K = build_vr(unit_square(), eps_max=2, schedule=Explicit((0.5, 1.2, 1.5)))
    assert K.value((0, 1)) == 1.2
    assert K.value((0, 2)) == 1.5
    b = barcode(K, max_dim=1)
    assert b.intervals(1) == [(1.2, 1.5)]


def test_schedule_excludes_edges_beyond_last_step():
    K = build_vr(unit_square(), eps_max=2, schedule=Explicit((1.0,)))
    assert (0, 2) not in K
    assert barcode(K, max_dim=1).intervals(1) == [(1.0, math.inf)]


def test_uniform_grid():
    K = build_vr(unit_square(), eps_max=2.0, schedule=UniformGrid(4))
    assert K.value((0, 1)) == 1.0 and K.value((0, 2)) == 1.5


def test_schedule_validation():
    with pytest.raises(ValidationError):
        Explicit((1.0, 1.0))
    with pytest.raises(ValidationError):
        Explicit((0.0, 1.0))


@pytest.mark.parametrize("seed", range(30))
def test_diameter_rule(seed):
    rng = np.random.default_rng(seed)
    pc = PointCloud(random_cloud(rng, n_min=3))
    D = pairwise_distances(pc)
    K = build_vr(pc, eps_max=0.7, max_dim=2)
    for s in K.simplices:
        if len(s) == 1:
            assert K.value(s) == 0.0
        else:
            assert K.value(s) == max(D[a, b] for a, b in combinations(s, 2))


@pytest.mark.parametrize("seed", range(30))
def test_eps_max_monotonicity(seed):
    rng = np.random.default_rng(seed)
    pc = PointCloud(random_cloud(rng, n_min=3))
    small, large = 0.4, 0.9
    b_small = barcode(build_vr(pc, eps_max=small), max_dim=1)
    b_large = barcode(build_vr(pc, eps_max=large), max_dim=1)
    truncated = sorted((b.dim, b.birth, b.death if b.death <= small else math.inf)
                       for b in b_large.bars if b.birth <= small)
    assert truncated == sorted((b.dim, b.birth, b.death) for b in b_small.bars)


@pytest.mark.parametrize("seed", range(20))
def test_isometry_invariance(seed):
    rng = np.random.default_rng(seed)
    X = random_cloud(rng, n_min=4)
    a = rng.uniform(0, 2 * np.pi)
    Q = np.array([[np.cos(a), -np.sin(a)], [np.sin(a), np.cos(a)]])
    Y = X @ Q.T + rng.uniform(-5, 5, size=2)
    b1 = barcode(build_vr(PointCloud(X), eps_max=0.8), max_dim=1)
    b2 = barcode(build_vr(PointCloud(Y), eps_max=0.8), max_dim=1)
    i1 = sorted((b.dim, b.birth, b.death) for b in b1.bars)
    i2 = sorted((b.dim, b.birth, b.death) for b in b2.bars)
    assert len(i1) == len(i2)
    for (d1, s1, e1), (d2, s2, e2) in zip(i1, i2):
        assert d1 == d2
        assert s2 == pytest.approx(s1, rel=1e-9, abs=1e-12)
        assert e2 == pytest.approx(e1, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("seed", range(30))
def test_vr_is_clique_complex_of_neighbourhood_graph(seed):
    rng = np.random.default_rng(seed)
    pc = PointCloud(random_cloud(rng))
    D = pairwise_distances(pc)
    K = build_vr(pc, eps_max=1.5, max_dim=2)
    for eps in (0.2, 0.45, 0.8):
        G = Graph(len(pc), frozenset(e for e in combinations(range(len(pc)), 2) if D[e] <= eps))
        expected = set()
        for clique in maximal_cliques(G):
            for k in range(1, min(len(clique), 4) + 1):
                expected.update(combinations(clique, k))
        assert K.snapshot(eps) == expected


def test_annulus_deterministic_and_minimal():
    a, b = synthetic_annulus(50, 1, 1.5, 7), synthetic_annulus(50, 1, 1.5, 7)
    assert np.array_equal(a.coords, b.coords)
    r = np.linalg.norm(a.coords, axis=1)
    assert np.all((r >= 1) & (r <= 1.5))
    assert len(synthetic_annulus(8, 1, 1.5, 0)) == 8
    with pytest.raises(ValidationError):
        synthetic_annulus(7, 1, 1.5, 0)
