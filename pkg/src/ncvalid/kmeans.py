"""Multi-start Lloyd k-means.

Each restart draws a Forgy initialization (k distinct data points) from
its own PCG64 stream keyed by ``(seed, restart_id)``, so serial and
threaded runs return the same winner bit for bit.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import kernels
from .core import Dataset, Partition

logger = logging.getLogger(__name__)

INITS = ("forgy", "k-means++")


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    restarts: int = 50
    max_iters: int = 300
    tol: float = 1e-6
    seed: int = 0
    init: str = "forgy"
    n_jobs: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if not self.tol > 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.init not in INITS:
            raise ValueError(f"init must be one of {INITS}, got {self.init!r}")


@dataclass(frozen=True)
class KMeansResult:
    partition: Partition
    centroids: np.ndarray
    sse: float
    iterations: int
    restart_id: int = 0
    sse_history: tuple[float, ...] = field(default=(), repr=False)


def restart_rng(seed: int, restart_id: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed & (2**64 - 1), restart_id])))


def _repair_empty(X, labels, dist2, cents, k):
    # hand each empty cluster the point farthest from its centroid,
    # taken only from clusters that keep at least one member
    sizes = np.bincount(labels, minlength=k)
    for c in np.flatnonzero(sizes == 0):
        movable = sizes[labels] > 1
        cand = np.where(movable, dist2, -1.0)
        i = int(np.argmax(cand))
        sizes[labels[i]] -= 1
        labels[i] = c
        sizes[c] = 1
        dist2[i] = 0.0
        cents[c] = X[i]
    return labels


def _means(X, labels, k):
    sums = np.zeros((k, X.shape[1]))
    np.add.at(sums, labels, X)
    return sums / np.bincount(labels, minlength=k)[:, None]


def _sse(X, labels, cents):
    diff = X - cents[labels]
    return float(np.einsum("ij,ij->", diff, diff))


def lloyd_once(dataset: Dataset, k: int, initial_centroids, max_iters: int = 300,
               tol: float = 1e-6) -> KMeansResult:
    """Lloyd iterations from fixed starting centroids.

    Stops once no centroid moves more than ``tol`` times the RMS spread of
    the data, or after ``max_iters`` assignment/update rounds.
    """
    X = dataset.points
    n = dataset.n
    if k > n:
        raise ValueError(f"k={k} exceeds the number of points n={n}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    cents = np.array(initial_centroids, dtype=np.float64, copy=True).reshape(k, dataset.p)
    scale = float(np.sqrt(X.var(axis=0).sum()))
    threshold = tol * scale if scale > 0 else 0.0
    history = []
    iterations = 0
    labels = None
    for iterations in range(1, max_iters + 1):
        labels, dist2 = kernels.assign_labels(X, cents)
        labels = _repair_empty(X, labels, dist2, cents, k)
        new = _means(X, labels, k)
        shift = float(np.sqrt(((new - cents) ** 2).sum(axis=1)).max())
        cents = new
        history.append(_sse(X, labels, cents))
        if shift <= threshold:
            break
    return KMeansResult(
        partition=Partition(labels, k),
        centroids=cents,
        sse=history[-1],
        iterations=iterations,
        sse_history=tuple(history),
    )


def _distinct_rows(X):
    uniq, first = np.unique(X, axis=0, return_index=True)
    return np.sort(first)


def forgy_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k distinct data points drawn uniformly without replacement."""
    pool = _distinct_rows(X)
    if pool.size < k:
        pool = np.arange(X.shape[0])
    return X[rng.choice(pool, size=k, replace=False)]


def kmeanspp_init(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    pool = _distinct_rows(X)
    if pool.size < k:
        pool = np.arange(X.shape[0])
    chosen = [int(rng.choice(pool))]
    d2 = ((X[pool] - X[chosen[0]]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total <= 0:
            remaining = np.setdiff1d(pool, chosen)
            nxt = int(rng.choice(remaining))
        else:
            nxt = int(pool[rng.choice(pool.size, p=d2 / total)])
        chosen.append(nxt)
        d2 = np.minimum(d2, ((X[pool] - X[nxt]) ** 2).sum(axis=1))
    return X[chosen]


def _one_restart(dataset, config, restart_id):
    rng = restart_rng(config.seed, restart_id)
    init = forgy_init if config.init == "forgy" else kmeanspp_init
    start = init(dataset.points, config.k, rng)
    res = lloyd_once(dataset, config.k, start, config.max_iters, config.tol)
    return replace(res, restart_id=restart_id)


def kmeans_multistart(dataset: Dataset, config: KMeansConfig) -> KMeansResult:
    """Best of ``config.restarts`` Lloyd runs by SSE; ties go to the lowest restart id."""
    if config.k > dataset.n:
        raise ValueError(f"k={config.k} exceeds the number of points n={dataset.n}")
    ids = range(config.restarts)
    if config.n_jobs > 1 and config.restarts > 1:
        with ThreadPoolExecutor(max_workers=config.n_jobs) as pool:
            results = list(pool.map(lambda r: _one_restart(dataset, config, r), ids))
    else:
        results = [_one_restart(dataset, config, r) for r in ids]
    best = min(results, key=lambda r: (r.sse, r.restart_id))
    logger.debug("k=%d: best restart %d, sse=%.6g", config.k, best.restart_id, best.sse)
    return best
