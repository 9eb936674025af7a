import math

import numpy as np
import pytest
from hypothesis import given

import oracles
from strategies import instances, vectors
from ncvalid.core import Dataset, Partition
from ncvalid.metrics import (CorrelationMethod, centroid_pair_vector, correlate, euclidean, kendall, pairwise_distances,
                             pearson, rankdata, spearman)


def test_euclidean():
    assert euclidean([0, 0], [3, 4]) == 5.0


def test_pairwise_distances_toy(toy):
    ds, _ = toy
    assert pairwise_distances(ds).tolist() == [1.0, 10.0, 11.0, 9.0, 10.0, 1.0]


def test_pairwise_distances_needs_two_points():
    with pytest.raises(ValueError):
        pairwise_distances(Dataset([[1.0, 2.0]]))


def test_centroid_pair_vector_toy(toy):
    ds, part = toy
    # centroids 0.5 and 10.5
    assert centroid_pair_vector(ds, part).tolist() == [0.0, 10.0, 10.0, 10.0, 10.0, 0.0]


@given(instances())
def test_pair_vectors_match_brute_force(inst):
    ds, part = inst
    X = ds.points.tolist()
    assert np.allclose(pairwise_distances(ds), oracles.pdist(X), rtol=1e-12, atol=1e-12)
    assert np.allclose(centroid_pair_vector(ds, part), oracles.centroid_pairs(X, part.labels.tolist()),
                       rtol=1e-12, atol=1e-12)


def test_kendall_small_hand_value():
    # one discordant pair of three
    assert kendall([1, 2, 3], [1, 3, 2]) == pytest.approx(1 / 3, abs=1e-15)


@given(vectors(hi=40, ties=True))
def test_kendall_matches_quadratic_oracle_with_ties(uv):
    u, v = uv
    got = kendall(u, v)
    tied_all = len(set(u)) == 1 or len(set(v)) == 1
    if tied_all:
        assert math.isnan(got)
    else:
        assert got == pytest.approx(oracles.kendall_tau_b(u.tolist(), v.tolist()), abs=1e-12)


@given(vectors(hi=40))
def test_kendall_matches_quadratic_oracle(uv):
    u, v = uv
    if len(set(u)) > 1 and len(set(v)) > 1:
        assert kendall(u, v) == pytest.approx(oracles.kendall_tau_b(u.tolist(), v.tolist()), abs=1e-12)


@given(vectors(hi=40, ties=True))
def test_spearman_and_ranks_match_oracle(uv):
    u, v = uv
    assert np.allclose(rankdata(u), oracles.ranks(u.tolist()))
    if len(set(u)) > 1 and len(set(v)) > 1:
        assert spearman(u, v) == pytest.approx(oracles.spearman(u.tolist(), v.tolist()), abs=1e-12)


@given(vectors(lo=3))
def test_pearson_matches_oracle_and_bounds(uv):
    u, v = uv
    if np.ptp(u) > 1e-6 and np.ptp(v) > 1e-6:
        r = pearson(u, v)
        assert -1.0 <= r <= 1.0
        assert r == pytest.approx(oracles.pearson(u.tolist(), v.tolist()), abs=1e-9)


def test_zero_variance_is_nan():
    assert math.isnan(pearson([1, 1, 1], [1, 2, 3]))
    assert math.isnan(kendall([1, 1, 1], [1, 2, 3]))


def test_correlate_dispatch_and_errors():
    u, v = [1, 2, 3, 4], [2, 1, 4, 3]
    assert correlate(u, v, "pearson") == pearson(u, v)
    assert correlate(u, v, CorrelationMethod.KENDALL) == kendall(u, v)
    assert correlate(u, v, "spearman") == spearman(u, v)
    with pytest.raises(ValueError):
        correlate(u, v, "cosine")
    with pytest.raises(ValueError):
        correlate([1, 2], [1, 2, 3])
    with pytest.raises(ValueError):
        correlate([1], [1])


def test_partition_size_mismatch():
    with pytest.raises(ValueError):
        centroid_pair_vector(Dataset([1.0, 2.0, 3.0]), Partition([0, 1]))
