"""Euclidean distances and the Pearson / Spearman / Kendall tau-b correlations.

Correlations return ``nan`` when undefined (a zero-variance or all-tied
argument); callers decide what that means.
"""
from __future__ import annotations

import math
from enum import Enum

import numpy as np

from . import kernels
from .core import Dataset, Partition, centroids as _centroids


class CorrelationMethod(str, Enum):
    PEARSON = "pearson"
    KENDALL = "kendall"
    SPEARMAN = "spearman"


def euclidean(a, b) -> float:
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    diff = a - b
    return float(math.sqrt(float(np.dot(diff, diff))))


def pairwise_distances(dataset: Dataset) -> np.ndarray:
    """Condensed vector of all point-pair distances."""
    if dataset.n < 2:
        raise ValueError("pairwise distances need at least 2 points")
    return kernels.pdist(dataset.points)


def centroid_pair_vector(dataset: Dataset, partition: Partition, centroids=None) -> np.ndarray:
    """Condensed vector whose (i, j) entry is the distance between the
    centroids of the clusters holding points i and j (0 within a cluster)."""
    if partition.n != dataset.n:
        raise ValueError(f"partition has {partition.n} labels for {dataset.n} points")
    if dataset.n < 2:
        raise ValueError("pair vectors need at least 2 points")
    if centroids is None:
        centroids = _centroids(dataset, partition)
    centroids = np.asarray(centroids, dtype=np.float64)
    if centroids.shape != (partition.k, dataset.p):
        raise ValueError(f"centroids have shape {centroids.shape}, expected {(partition.k, dataset.p)}")
    return kernels.centroid_pairs(partition.labels, centroids)


def _pair(u, v):
    u = np.asarray(u, dtype=np.float64).ravel()
    v = np.asarray(v, dtype=np.float64).ravel()
    if u.shape != v.shape:
        raise ValueError(f"length mismatch: {u.size} vs {v.size}")
    if u.size < 2:
        raise ValueError("correlation needs at least 2 observations")
    return u, v


def pearson(u, v) -> float:
    u, v = _pair(u, v)
    du = u - u.mean()
    dv = v - v.mean()
    suu = float(np.dot(du, du))
    svv = float(np.dot(dv, dv))
    if suu == 0.0 or svv == 0.0:
        return math.nan
    r = float(np.dot(du, dv)) / math.sqrt(suu * svv)
    return min(1.0, max(-1.0, r))


def rankdata(a) -> np.ndarray:
    """1-based ranks with ties sharing their average rank."""
    a = np.asarray(a, dtype=np.float64).ravel()
    order = np.argsort(a, kind="stable")
    sorted_a = a[order]
    starts = np.flatnonzero(np.r_[True, sorted_a[1:] != sorted_a[:-1]])
    ends = np.r_[starts[1:], a.size]
    avg = (starts + ends + 1) / 2.0
    ranks = np.empty(a.size)
    ranks[order] = np.repeat(avg, ends - starts)
    return ranks


def spearman(u, v) -> float:
    u, v = _pair(u, v)
    return pearson(rankdata(u), rankdata(v))


def _tie_pairs(sorted_values) -> int:
    starts = np.flatnonzero(np.r_[True, sorted_values[1:] != sorted_values[:-1]])
    counts = np.diff(np.r_[starts, sorted_values.size]).astype(np.int64)
    return int((counts * (counts - 1) // 2).sum())


def kendall(u, v) -> float:
    """Kendall tau-b in O(m log m) via a merge-sort inversion count."""
    u, v = _pair(u, v)
    m = u.size
    total = m * (m - 1) // 2
    order = np.lexsort((v, u))
    us, vs = u[order], v[order]
    tied_u = _tie_pairs(us)
    tied_v = _tie_pairs(np.sort(v))
    # pairs tied in both coordinates
    joint = np.r_[True, (us[1:] != us[:-1]) | (vs[1:] != vs[:-1])]
    starts = np.flatnonzero(joint)
    counts = np.diff(np.r_[starts, m]).astype(np.int64)
    tied_both = int((counts * (counts - 1) // 2).sum())
    if tied_u == total or tied_v == total:
        return math.nan
    discordant = kernels.count_inversions(np.unique(vs, return_inverse=True)[1])
    concordant_minus_discordant = total - tied_u - tied_v + tied_both - 2 * discordant
    denom = math.sqrt(float(total - tied_u) * float(total - tied_v))
    return min(1.0, max(-1.0, concordant_minus_discordant / denom))


def correlate(u, v, method="pearson") -> float:
    method = CorrelationMethod(method)
    if method is CorrelationMethod.PEARSON:
        return pearson(u, v)
    if method is CorrelationMethod.SPEARMAN:
        return spearman(u, v)
    return kendall(u, v)
