# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops over condensed pair vectors.

Every function here has a numpy twin in ``_kernels_py`` with the same
signature and semantics; ``ncvalid.kernels`` picks one at import.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, INFINITY

cnp.import_array()


def pdist(const double[:, ::1] X):
    """Condensed Euclidean distances, lexicographic (i, j) order."""
    cdef Py_ssize_t n = X.shape[0], p = X.shape[1]
    cdef Py_ssize_t i, j, s, pos = 0
    cdef double acc, diff
    out_arr = np.empty(n * (n - 1) // 2, dtype=np.float64)
    cdef double[::1] out = out_arr
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                acc = 0.0
                for s in range(p):
                    diff = X[i, s] - X[j, s]
                    acc = acc + diff * diff
                out[pos] = sqrt(acc)
                pos += 1
    return out_arr


def square_from_condensed(const double[::1] d, Py_ssize_t n):
    cdef Py_ssize_t i, j, pos = 0
    out_arr = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                out[i, j] = d[pos]
                out[j, i] = d[pos]
                pos += 1
    return out_arr


def centroid_pairs(const cnp.int64_t[::1] labels, const double[:, ::1] C):
    """Entry (i, j) is the distance between the centroids of i's and j's clusters."""
    cdef Py_ssize_t n = labels.shape[0], k = C.shape[0]
    cdef Py_ssize_t i, j, pos = 0
    cdef double[:, ::1] M = square_from_condensed(pdist(C), k)
    cdef cnp.int64_t li
    out_arr = np.empty(n * (n - 1) // 2, dtype=np.float64)
    cdef double[::1] out = out_arr
    with nogil:
        for i in range(n):
            li = labels[i]
            for j in range(i + 1, n):
                out[pos] = M[li, labels[j]]
                pos += 1
    return out_arr


def same_cluster_indicator(const cnp.int64_t[::1] labels):
    """0.0 for same-cluster pairs, 1.0 otherwise."""
    cdef Py_ssize_t n = labels.shape[0]
    cdef Py_ssize_t i, j, pos = 0
    out_arr = np.empty(n * (n - 1) // 2, dtype=np.float64)
    cdef double[::1] out = out_arr
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                out[pos] = 0.0 if labels[i] == labels[j] else 1.0
                pos += 1
    return out_arr


def pair_cluster_stats(const double[::1] d, const cnp.int64_t[::1] labels, Py_ssize_t k):
    """Per cluster pair (a, b): min, max and sum of point distances.

    Diagonal entries cover within-cluster pairs. Matrices are symmetric;
    cells with no pairs hold +inf / 0 / 0.
    """
    cdef Py_ssize_t n = labels.shape[0]
    cdef Py_ssize_t i, j, pos = 0
    cdef cnp.int64_t a, b
    cdef double v
    mins_arr = np.full((k, k), np.inf)
    maxs_arr = np.zeros((k, k))
    sums_arr = np.zeros((k, k))
    cdef double[:, ::1] mins = mins_arr
    cdef double[:, ::1] maxs = maxs_arr
    cdef double[:, ::1] sums = sums_arr
    with nogil:
        for i in range(n):
            a = labels[i]
            for j in range(i + 1, n):
                b = labels[j]
                v = d[pos]
                pos += 1
                if v < mins[a, b]:
                    mins[a, b] = v
                    mins[b, a] = v
                if v > maxs[a, b]:
                    maxs[a, b] = v
                    maxs[b, a] = v
                sums[a, b] += v
                if a != b:
                    sums[b, a] += v
    return mins_arr, maxs_arr, sums_arr


def point_cluster_sums(const double[::1] d, const cnp.int64_t[::1] labels, Py_ssize_t k):
    """Per point: summed distance to each cluster, and max distance within its own."""
    cdef Py_ssize_t n = labels.shape[0]
    cdef Py_ssize_t i, j, pos = 0
    cdef cnp.int64_t a, b
    cdef double v
    sums_arr = np.zeros((n, k))
    own_arr = np.zeros(n)
    cdef double[:, ::1] sums = sums_arr
    cdef double[::1] own = own_arr
    with nogil:
        for i in range(n):
            a = labels[i]
            for j in range(i + 1, n):
                b = labels[j]
                v = d[pos]
                pos += 1
                sums[i, b] += v
                sums[j, a] += v
                if a == b:
                    if v > own[i]:
                        own[i] = v
                    if v > own[j]:
                        own[j] = v
    return sums_arr, own_arr


cdef cnp.int64_t _merge_count(cnp.int64_t[::1] a, cnp.int64_t[::1] buf,
                              Py_ssize_t lo, Py_ssize_t hi) noexcept nogil:
    # bottom-up merge sort over a[lo:hi]; counts pairs with a[i] > a[j], i < j
    cdef Py_ssize_t width = 1, left, mid, right, i, j, t
    cdef cnp.int64_t swaps = 0
    cdef Py_ssize_t m = hi - lo
    while width < m:
        left = lo
        while left < hi:
            mid = left + width
            if mid > hi:
                mid = hi
            right = mid + width
            if right > hi:
                right = hi
            i = left
            j = mid
            t = left
            while i < mid and j < right:
                if a[j] < a[i]:
                    buf[t] = a[j]
                    swaps += mid - i
                    j += 1
                else:
                    buf[t] = a[i]
                    i += 1
                t += 1
            while i < mid:
                buf[t] = a[i]
                i += 1
                t += 1
            while j < right:
                buf[t] = a[j]
                j += 1
                t += 1
            left = right
        for t in range(lo, hi):
            a[t] = buf[t]
        width *= 2
    return swaps


def count_inversions(values):
    """Number of strictly inverted pairs (i < j, v[i] > v[j]); O(m log m)."""
    cdef cnp.int64_t[::1] a = np.array(values, dtype=np.int64, copy=True)
    cdef cnp.int64_t[::1] buf = np.empty_like(np.asarray(a))
    cdef cnp.int64_t swaps
    with nogil:
        swaps = _merge_count(a, buf, 0, a.shape[0])
    return int(swaps)


def assign_labels(const double[:, ::1] X, const double[:, ::1] C):
    """Nearest centroid by squared distance; ties go to the lowest id."""
    cdef Py_ssize_t n = X.shape[0], p = X.shape[1], k = C.shape[0]
    cdef Py_ssize_t i, c, s, best
    cdef double acc, diff, bestd
    labels_arr = np.empty(n, dtype=np.int64)
    dist_arr = np.empty(n, dtype=np.float64)
    cdef cnp.int64_t[::1] labels = labels_arr
    cdef double[::1] dist = dist_arr
    with nogil:
        for i in range(n):
            best = 0
            bestd = INFINITY
            for c in range(k):
                acc = 0.0
                for s in range(p):
                    diff = X[i, s] - C[c, s]
                    acc = acc + diff * diff
                if acc < bestd:
                    bestd = acc
                    best = c
            labels[i] = best
            dist[i] = bestd
    return labels_arr, dist_arr
