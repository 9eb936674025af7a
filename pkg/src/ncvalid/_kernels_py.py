"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``.

Loops run row by row over the condensed layout so memory stays O(n)
beyond the output. Per-entry summation order in ``pdist`` and
``assign_labels`` follows the compiled code, so both backends agree
bitwise on those two.
"""
import numpy as np


def _row_slices(n):
    pos = 0
    for i in range(n - 1):
        width = n - i - 1
        yield i, pos, pos + width
        pos += width


def pdist(X):
    X = np.asarray(X, dtype=np.float64)
    n, p = X.shape
    out = np.empty(n * (n - 1) // 2)
    for i, lo, hi in _row_slices(n):
        diff = X[i] - X[i + 1:]
        acc = np.zeros(hi - lo)
        for s in range(p):
            acc = acc + diff[:, s] * diff[:, s]
        out[lo:hi] = np.sqrt(acc)
    return out


def square_from_condensed(d, n):
    out = np.zeros((n, n))
    iu = np.triu_indices(n, k=1)
    out[iu] = d
    out.T[iu] = d
    return out


def centroid_pairs(labels, C):
    labels = np.asarray(labels, dtype=np.int64)
    n = labels.shape[0]
    M = square_from_condensed(pdist(C), C.shape[0])
    out = np.empty(n * (n - 1) // 2)
    for i, lo, hi in _row_slices(n):
        out[lo:hi] = M[labels[i], labels[i + 1:]]
    return out


def same_cluster_indicator(labels):
    labels = np.asarray(labels, dtype=np.int64)
    n = labels.shape[0]
    out = np.empty(n * (n - 1) // 2)
    for i, lo, hi in _row_slices(n):
        out[lo:hi] = labels[i + 1:] != labels[i]
    return out


def pair_cluster_stats(d, labels, k):
    labels = np.asarray(labels, dtype=np.int64)
    n = labels.shape[0]
    mins = np.full((k, k), np.inf)
    maxs = np.zeros((k, k))
    sums = np.zeros((k, k))
    for i, lo, hi in _row_slices(n):
        a = labels[i]
        vals = d[lo:hi]
        labs = labels[i + 1:]
        np.minimum.at(mins[a], labs, vals)
        np.maximum.at(maxs[a], labs, vals)
        sums[a] += np.bincount(labs, weights=vals, minlength=k)
    mins = np.minimum(mins, mins.T)
    maxs = np.maximum(maxs, maxs.T)
    diag = np.diag(sums).copy()
    sums = sums + sums.T
    np.fill_diagonal(sums, diag)
    return mins, maxs, sums


def point_cluster_sums(d, labels, k):
    labels = np.asarray(labels, dtype=np.int64)
    n = labels.shape[0]
    sums = np.zeros((n, k))
    own = np.zeros(n)
    for i, lo, hi in _row_slices(n):
        a = labels[i]
        vals = d[lo:hi]
        labs = labels[i + 1:]
        sums[i] += np.bincount(labs, weights=vals, minlength=k)
        sums[i + 1:, a] += vals
        same = labs == a
        if same.any():
            own[i] = max(own[i], vals[same].max())
            tail = own[i + 1:]
            tail[same] = np.maximum(tail[same], vals[same])
    return sums, own


def count_inversions(values):
    """Strict inversion count by bottom-up merging, vectorized per level.

    At each level the array is a run of sorted blocks of size ``width``.
    Tagging every element with its merge-pair id turns all merges of the
    level into one sort, and the inversions contributed by a right-block
    element are the left-block elements of its pair that exceed it.
    """
    a = np.asarray(values)
    m = a.shape[0]
    if m < 2:
        return 0
    _, a = np.unique(a, return_inverse=True)
    a = a.astype(np.int64).ravel()
    span = np.int64(a.max() + 1)
    idx = np.arange(m, dtype=np.int64)
    total = 0
    width = 1
    while width < m:
        block = idx // width
        pair = block // 2
        right = (block % 2) == 1
        key = pair * span + a
        left_keys = key[~right]
        right_keys = key[right]
        right_pair = pair[right]
        above = np.searchsorted(left_keys, right_keys, side="right")
        pair_end = np.searchsorted(left_keys, (right_pair + 1) * span, side="left")
        total += int((pair_end - above).sum())
        a = np.sort(key, kind="stable") - (idx // (2 * width)) * span
        width *= 2
    return total


def assign_labels(X, C):
    X = np.asarray(X, dtype=np.float64)
    C = np.asarray(C, dtype=np.float64)
    n, p = X.shape
    D = np.zeros((n, C.shape[0]))
    for s in range(p):
        diff = X[:, s][:, None] - C[:, s][None, :]
        D = D + diff * diff
    labels = np.argmin(D, axis=1).astype(np.int64)
    return labels, D[np.arange(n), labels]
