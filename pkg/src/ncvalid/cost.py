"""Closed-form operation counts for computing each index once.

Counts assume Euclidean distance (p multiplications and one square root
per distance), Pearson correlation for NC and equal cluster sizes n/k,
which is the most expensive case. Additions and comparisons are not
counted. Terms with n/k are kept as reals.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

INDEX_NAMES = ("NCI1", "NCI2", "NC", "CH", "CSL", "DI", "DB", "DB*", "GD33", "PB", "SC", "SF")
ALIASES = {"CS": "CSL"}
LINEAR = ("CH", "DB", "DB*", "SF")


@dataclass(frozen=True)
class OperationCounts:
    multiplications: float
    square_roots: float
    exponentials: float = 0

    def __post_init__(self):
        if min(self.multiplications, self.square_roots, self.exponentials) < 0:
            raise ValueError("operation counts must be non-negative")


def _nc(n, p, k):
    pairs = n * (n - 1) / 2
    return (p + 1) * pairs + p * k * (k - 1) / 2, pairs


def _rows(n, p, k) -> dict[str, tuple[float, float, float]]:
    nc_mult, nc_sqrt = _nc(n, p, k)
    within = n / 2 * (n / k - 1)
    return {
        "NCI1": (3 * nc_mult + 1, 3 * nc_sqrt, 0),
        "NCI2": (3 * nc_mult, 3 * nc_sqrt, 0),
        "NC": (nc_mult, nc_sqrt, 0),
        "CH": (p * (n + k) + 2 * k + 4, n + k, 0),
        "CSL": (p * within + p * k / 2 * (k - 1) + k + 1, within + k / 2 * (k - 1), 0),
        "DI": (p * within + p * (k - 1) * n ** 2 / (2 * k) + 1, within + (k - 1) * n ** 2 / (2 * k), 0),
        "DB": (p * n + k + (p + 1) * k * (k - 1) / 2 + 2, 1, 0),
        "DB*": (p * n + k + (p + 1) * k * (k - 1) / 2 + 2, 1, 0),
        "GD33": (p * n ** 2 / k ** 2 + p * n + 2 * k + 3, n ** 2 / k ** 2 + n, 0),
        "PB": ((p + 1) * n * (n - 1) / 2, n * (n - 1) / 2, 0),
        "SC": (p * n ** 2 * (k - 1) / k + p * n * (n / k - 1) + k + 2, n ** 2 * (k - 1) / k + n * (n / k - 1), 0),
        "SF": (p * n + (p + 1) * k + 4, n + k, 1),
    }


def canonical_name(index_name: str) -> str:
    name = ALIASES.get(index_name.upper(), index_name.upper())
    if name not in INDEX_NAMES:
        raise ValueError(f"unknown index {index_name!r}; expected one of {INDEX_NAMES}")
    return name


def _check(n, p, k):
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if not 2 <= k <= n:
        raise ValueError(f"k must satisfy 2 <= k <= n, got k={k}, n={n}")


def cost_estimate(index_name: str, n: int, p: int, k: int) -> OperationCounts:
    """Multiplications, square roots and exponentials for one index.

    Examples
    --------
    >>> cost_estimate("NC", 100, 2, 3)
    OperationCounts(multiplications=14856.0, square_roots=4950.0, exponentials=0)
    """
    name = canonical_name(index_name)
    _check(n, p, k)
    return OperationCounts(*_rows(n, p, k)[name])


def cost_table(n: int, p: int, k: int) -> dict[str, OperationCounts]:
    """All twelve rows at one (n, p, k)."""
    _check(n, p, k)
    return {name: OperationCounts(*v) for name, v in _rows(n, p, k).items()}


def time_indices(n: int, p: int, k: int, repeats: int = 3, seed: int = 0) -> dict[str, float]:
    """Best-of-``repeats`` wall-clock seconds per index on random data.

    The data are n standard normal points split round-robin into k equal
    clusters. NCI1/NCI2 time three NC evaluations, as their cost implies.
    Only relative ordering is meaningful.
    """
    from .core import Dataset, Partition
    from .indices import (calinski_harabasz, chou_su_lai, davies_bouldin, davies_bouldin_star, dunn,
                          gd33, nc, point_biserial, silhouette_coefficient, silhouette_values,
                          score_function)
    from .metrics import centroid_pair_vector, pairwise_distances

    _check(n, p, k)
    rng = np.random.default_rng(seed)
    ds = Dataset(rng.standard_normal((n, p)))
    parts = [Partition(np.arange(n) % kk, kk) if kk > 1 else None for kk in (k - 1, k, k + 1)]
    part = parts[1]

    def nc_once(pt):
        if pt is None:
            return 0.0
        return nc(pairwise_distances(ds), centroid_pair_vector(ds, pt))

    def three_nc():
        for pt in parts:
            nc_once(pt)

    jobs: dict[str, Callable[[], object]] = {
        "NCI1": three_nc,
        "NCI2": three_nc,
        "NC": lambda: nc_once(part),
        "CH": lambda: calinski_harabasz(ds, part),
        "CSL": lambda: chou_su_lai(ds, part),
        "DI": lambda: dunn(ds, part),
        "DB": lambda: davies_bouldin(ds, part),
        "DB*": lambda: davies_bouldin_star(ds, part),
        "GD33": lambda: gd33(ds, part),
        "PB": lambda: point_biserial(pairwise_distances(ds), part),
        "SC": lambda: silhouette_coefficient(silhouette_values(ds, part)),
        "SF": lambda: score_function(ds, part),
    }
    out = {}
    for name, fn in jobs.items():
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        out[name] = best
    return out


__all__ = ["INDEX_NAMES", "LINEAR", "OperationCounts", "canonical_name", "cost_estimate", "cost_table", "time_indices"]
