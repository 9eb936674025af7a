"""Dataset and partition types, pair indexing and centroids.

Centroid sets, the global centroid and condensed pair vectors are plain
float64 numpy arrays (``(k, p)``, ``(p,)`` and ``(n*(n-1)/2,)``).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class ContractError(ValueError):
    """An input violates a type-level invariant (e.g. an empty cluster)."""


def _frozen(a):
    a = np.array(a, dtype=np.float64, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Dataset:
    """n points in p dimensions.

    Parameters
    ----------
    points : array_like, shape (n, p)
        A 1-D input is read as n points in one dimension.
    names : sequence of str, optional
        Column names, used in error messages and reports.
    """

    points: np.ndarray
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2:
            raise ValueError(f"points must be 2-D, got shape {pts.shape}")
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError(f"dataset needs n >= 1 and p >= 1, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("dataset contains non-finite coordinates")
        object.__setattr__(self, "points", _frozen(pts))
        if self.names is not None:
            names = tuple(str(s) for s in self.names)
            if len(names) != pts.shape[1]:
                raise ValueError(f"{len(names)} column names for {pts.shape[1]} columns")
            object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def p(self) -> int:
        return self.points.shape[1]

    def column_name(self, j: int) -> str:
        return self.names[j] if self.names else f"column {j}"


@dataclass(frozen=True)
class Partition:
    """Hard cluster assignment with dense 0-based ids and no empty cluster."""

    labels: np.ndarray
    k: int = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        labels = np.asarray(self.labels)
        if labels.ndim != 1 or labels.size == 0:
            raise ValueError("labels must be a non-empty 1-D sequence")
        if not np.issubdtype(labels.dtype, np.integer):
            if not np.all(np.equal(np.mod(labels, 1), 0)):
                raise ValueError("cluster labels must be integers")
        labels = np.array(labels, dtype=np.int64, copy=True)
        k = int(labels.max()) + 1 if self.k is None else int(self.k)
        if labels.min() < 0 or labels.max() >= k:
            raise ContractError(f"labels must lie in [0, {k})")
        sizes = np.bincount(labels, minlength=k)
        if np.any(sizes == 0):
            empty = np.flatnonzero(sizes == 0).tolist()
            raise ContractError(f"empty cluster(s) {empty}")
        labels.setflags(write=False)
        sizes.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "_sizes", sizes)

    @property
    def sizes(self) -> np.ndarray:
        return self._sizes

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    @classmethod
    def from_values(cls, values) -> "Partition":
        """Densify arbitrary hashable labels in order of first appearance."""
        ids: dict = {}
        dense = [ids.setdefault(v, len(ids)) for v in values]
        return cls(np.asarray(dense, dtype=np.int64), len(ids))

    def relabel(self, mapping) -> "Partition":
        """Apply a permutation ``mapping[old] = new`` of cluster ids."""
        mapping = np.asarray(mapping, dtype=np.int64)
        if sorted(mapping.tolist()) != list(range(self.k)):
            raise ValueError("mapping must be a permutation of range(k)")
        return Partition(mapping[self.labels], self.k)


def condensed_index(i: int, j: int, n: int) -> int:
    """Position of the unordered pair {i, j} in a condensed vector of n points.

    Pairs are ordered lexicographically by (min, max).
    """
    if i == j:
        raise ValueError("a pair needs two distinct points")
    if i > j:
        i, j = j, i
    if i < 0 or j >= n:
        raise ValueError(f"pair ({i}, {j}) out of range for n={n}")
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def condensed_size(n: int) -> int:
    return n * (n - 1) // 2


def _check(dataset: Dataset, partition: Partition):
    if partition.n != dataset.n:
        raise ValueError(f"partition has {partition.n} labels for {dataset.n} points")


def centroids(dataset: Dataset, partition: Partition) -> np.ndarray:
    """Cluster means, one row per cluster id."""
    _check(dataset, partition)
    sizes = np.bincount(partition.labels, minlength=partition.k)
    if np.any(sizes == 0):
        raise ContractError("empty cluster")
    sums = np.zeros((partition.k, dataset.p))
    np.add.at(sums, partition.labels, dataset.points)
    return sums / sizes[:, None]


def global_centroid(dataset: Dataset) -> np.ndarray:
    return dataset.points.mean(axis=0)
