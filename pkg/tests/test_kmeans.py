import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from strategies import random_instance
from ncvalid.core import Dataset
from ncvalid.kmeans import (KMeansConfig, forgy_init, kmeans_multistart, kmeanspp_init, lloyd_once, restart_rng)


def _blobs(rng, centers, m=30, sd=0.2):
    X = np.vstack([rng.normal(c, sd, size=(m, len(c))) for c in centers])
    return Dataset(X), np.repeat(np.arange(len(centers)), m)


def test_config_validation():
    for bad in (dict(k=0), dict(k=2, restarts=0), dict(k=2, max_iters=0), dict(k=2, tol=0.0), dict(k=2, init="x")):
        with pytest.raises(ValueError):
            KMeansConfig(**bad)


def test_k_larger_than_n():
    with pytest.raises(ValueError):
        kmeans_multistart(Dataset([0.0, 1.0]), KMeansConfig(k=3))


def test_recovers_separated_blobs(rng):
    ds, truth = _blobs(rng, [(0, 0), (5, 0), (0, 5)])
    res = kmeans_multistart(ds, KMeansConfig(k=3, restarts=10, seed=1))
    # same partition up to relabelling
    pairs = {(int(a), int(b)) for a, b in zip(res.partition.labels, truth)}
    assert len(pairs) == 3
    assert res.sse == pytest.approx(oracles.sse(ds.points.tolist(), res.partition.labels.tolist()), rel=1e-9)


@pytest.mark.parametrize("seed", range(50))
def test_lloyd_sse_never_increases(seed):
    rng = np.random.default_rng(seed)
    ds, _ = random_instance(rng, n_lo=10, n_hi=60)
    k = int(rng.integers(1, min(6, ds.n) + 1))
    start = forgy_init(ds.points, k, rng)
    res = lloyd_once(ds, k, start)
    hist = np.array(res.sse_history)
    assert np.all(np.diff(hist) <= 1e-9 * max(1.0, hist[0]))
    assert res.partition.k == k and np.all(res.partition.sizes > 0)


@pytest.mark.parametrize("seed", range(50))
def test_seed_determinism_across_threads(seed):
    rng = np.random.default_rng(1000 + seed)
    ds, _ = random_instance(rng, n_lo=10, n_hi=50)
    k = int(rng.integers(2, 5))
    runs = [kmeans_multistart(ds, KMeansConfig(k=k, restarts=8, seed=seed, n_jobs=j)) for j in (1, 2, 4)]
    for r in runs[1:]:
        assert r.restart_id == runs[0].restart_id
        assert r.sse == runs[0].sse
        assert np.array_equal(r.partition.labels, runs[0].partition.labels)
        assert np.array_equal(r.centroids, runs[0].centroids)


def test_best_restart_is_minimum_sse(rng):
    ds, _ = random_instance(rng, n_lo=40, n_hi=40)
    cfg = KMeansConfig(k=4, restarts=12, seed=3)
    best = kmeans_multistart(ds, cfg)
    singles = [lloyd_once(ds, 4, forgy_init(ds.points, 4, restart_rng(3, r))) for r in range(12)]
    sses = [s.sse for s in singles]
    assert best.sse == min(sses)
    assert best.restart_id == sses.index(min(sses))


def test_ties_go_to_lowest_restart():
    # two identical well-separated groups: every restart reaches the same SSE
    ds = Dataset([[0.0], [0.0], [10.0], [10.0]])
    res = kmeans_multistart(ds, KMeansConfig(k=2, restarts=5))
    assert res.restart_id == 0 and res.sse == 0.0


def test_empty_cluster_repaired():
    ds = Dataset([[0.0], [0.1], [0.2], [5.0], [5.1]])
    # the third centroid is far from everything and starts empty
    res = lloyd_once(ds, 3, [[0.0], [5.0], [100.0]])
    assert np.all(res.partition.sizes > 0)


def test_forgy_uses_distinct_rows(rng):
    X = np.array([[0.0, 0.0]] * 10 + [[1.0, 1.0]] * 10 + [[2.0, 2.0]])
    for _ in range(20):
        c = forgy_init(X, 3, rng)
        assert len({tuple(r) for r in c}) == 3


@given(st.integers(0, 2**31), st.integers(1, 5))
def test_kmeanspp_returns_data_points(seed, k):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(20, 2))
    c = kmeanspp_init(X, k, rng)
    assert c.shape == (k, 2)
    assert all(any(np.array_equal(r, x) for x in X) for r in c)


def test_restart_streams_are_reproducible():
    a = restart_rng(7, 3).random(4)
    b = restart_rng(7, 3).random(4)
    c = restart_rng(7, 4).random(4)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


def test_kmeanspp_config_runs(rng):
    ds, _ = _blobs(rng, [(0, 0), (4, 4)])
    res = kmeans_multistart(ds, KMeansConfig(k=2, restarts=3, init="k-means++"))
    assert res.partition.k == 2
