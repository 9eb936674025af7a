"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the numpy
fallback. Setting ``NCVALID_PURE_PYTHON=1`` forces the fallback.
"""
import os

import numpy as np

from . import _kernels_py

try:
    if os.environ.get("NCVALID_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-python backend requested")
    from . import _kernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

__all__ = [
    "BACKEND",
    "available_backends",
    "get_backend",
    "pdist",
    "square_from_condensed",
    "centroid_pairs",
    "same_cluster_indicator",
    "pair_cluster_stats",
    "point_cluster_sums",
    "count_inversions",
    "assign_labels",
]


def available_backends():
    names = ["python"]
    try:
        from . import _kernels  # noqa: F401

        names.insert(0, "cython")
    except ImportError:
        pass
    return names


def get_backend(name=None):
    """Return the kernel module for ``name`` (default: the active one)."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def pdist(X):
    return _impl.pdist(_f64(X))


def square_from_condensed(d, n):
    return _impl.square_from_condensed(_f64(d), int(n))


def centroid_pairs(labels, C):
    return _impl.centroid_pairs(_i64(labels), _f64(C))


def same_cluster_indicator(labels):
    return _impl.same_cluster_indicator(_i64(labels))


def pair_cluster_stats(d, labels, k):
    return _impl.pair_cluster_stats(_f64(d), _i64(labels), int(k))


def point_cluster_sums(d, labels, k):
    return _impl.point_cluster_sums(_f64(d), _i64(labels), int(k))


def count_inversions(values):
    return _impl.count_inversions(_i64(values))


def assign_labels(X, C):
    return _impl.assign_labels(_f64(X), _f64(C))
