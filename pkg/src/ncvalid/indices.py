"""Cluster validity measures.

Larger is better for NC, NCI1, NCI2, CH, DI, GD33, PB and SC; smaller is
better for CS, DB, DB* and SF. Degenerate denominators produce an
undefined :class:`IndexValue` rather than 0 or infinity.

Baselines accept an optional precomputed condensed distance vector ``d``
so a sweep computes the O(n^2) distances once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import kernels
from .core import Dataset, Partition, centroids as _centroids, global_centroid
from .metrics import correlate, pairwise_distances

NCI_GUARD = 1e-12

MAXIMIZE = "max"
MINIMIZE = "min"

ORIENTATION = {
    "NC": MAXIMIZE,
    "NCI1": MAXIMIZE,
    "NCI2": MAXIMIZE,
    "CH": MAXIMIZE,
    "CS": MINIMIZE,
    "DI": MAXIMIZE,
    "DB": MINIMIZE,
    "DB*": MINIMIZE,
    "GD33": MAXIMIZE,
    "PB": MAXIMIZE,
    "SC": MAXIMIZE,
    "SF": MINIMIZE,
}

BASELINES = ("CH", "CS", "DI", "DB", "DB*", "GD33", "PB", "SC", "SF")


@dataclass(frozen=True)
class IndexValue:
    """A measure's value, or an undefined marker carrying the reason.

    ``note`` is ``"degenerate"`` for the NC convention on coincident
    centroids; for undefined values it says what broke.
    """

    value: float
    defined: bool = True
    note: str | None = None

    def __float__(self):
        return self.value

    @classmethod
    def undefined(cls, note: str) -> "IndexValue":
        return cls(math.nan, False, note)

    @classmethod
    def of(cls, x: float, note: str | None = None) -> "IndexValue":
        if x is None or not math.isfinite(x):
            return cls.undefined(note or "non-finite value")
        return cls(float(x), True, note)


@dataclass(frozen=True)
class DBParameters:
    q: float = 2.0
    t: float = 2.0

    def __post_init__(self):
        if self.q < 1 or self.t < 1:
            raise ValueError(f"Davies-Bouldin needs q, t >= 1, got q={self.q}, t={self.t}")


@dataclass(frozen=True)
class ScatterTerms:
    s: np.ndarray  # per-cluster scatter
    m: np.ndarray  # k x k centroid separations
    r: np.ndarray  # per-cluster ratio (R or R*)


@dataclass(frozen=True)
class SilhouetteValues:
    a: np.ndarray
    b: np.ndarray
    s: np.ndarray


@dataclass(frozen=True)
class SFComponents:
    bcd: float
    wcd: float


def _require_k2(partition: Partition, name: str):
    if partition.k < 2:
        raise ValueError(f"{name} needs k >= 2, got k={partition.k}")


def _check_sizes(dataset, partition):
    if partition.n != dataset.n:
        raise ValueError(f"partition has {partition.n} labels for {dataset.n} points")


def _prep(dataset, partition, cents=None):
    _check_sizes(dataset, partition)
    if cents is None:
        cents = _centroids(dataset, partition)
    return np.asarray(cents, dtype=np.float64)


def _dist_to_centroid(dataset, partition, cents):
    diff = dataset.points - cents[partition.labels]
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def _distances(dataset, d):
    return pairwise_distances(dataset) if d is None else np.asarray(d, dtype=np.float64)


def _centroid_separations(cents):
    return kernels.square_from_condensed(kernels.pdist(cents), cents.shape[0])


# --- NC family -------------------------------------------------------------

def nc(d, c, method="pearson") -> IndexValue:
    """Correlation between point distances ``d`` and centroid distances ``c``.

    Valid for k >= 2; NC(1) = 0 is the caller's job. When every centroid
    coincides ``c`` is constant and the result is 0 flagged degenerate.
    """
    d = np.asarray(d, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    if d.shape != c.shape:
        raise ValueError(f"length mismatch: {d.size} vs {c.size}")
    if d.size == 0 or np.all(d == d[0]):
        return IndexValue.undefined("all points coincide")
    if np.all(c == c[0]):
        return IndexValue(0.0, True, "degenerate")
    return IndexValue.of(correlate(d, c, method))


def _nc_triple(ncs: Mapping[int, float], k: int):
    if k < 2:
        raise ValueError(f"NCI needs k >= 2, got {k}")
    try:
        vals = [ncs[k - 1], ncs[k], ncs[k + 1]]
    except KeyError as exc:
        raise ValueError(f"NC({exc.args[0]}) is not available for NCI({k})") from None
    return [float(v.value) if isinstance(v, IndexValue) else float(v) for v in vals]


def nci1(ncs: Mapping[int, float], k: int) -> IndexValue:
    """Ratio of the relative NC gains into k and out of k."""
    prev, cur, nxt = _nc_triple(ncs, k)
    if not all(map(math.isfinite, (prev, cur, nxt))):
        return IndexValue.undefined("NC undefined at k-1, k or k+1")
    den = (nxt - cur) * (1.0 - prev)
    if abs(den) < NCI_GUARD:
        return IndexValue.undefined("zero denominator")
    return IndexValue.of((cur - prev) * (1.0 - cur) / den)


def nci2(ncs: Mapping[int, float], k: int) -> IndexValue:
    """Difference of the relative NC gains into k and out of k."""
    prev, cur, nxt = _nc_triple(ncs, k)
    if not all(map(math.isfinite, (prev, cur, nxt))):
        return IndexValue.undefined("NC undefined at k-1, k or k+1")
    if abs(1.0 - prev) < NCI_GUARD or abs(1.0 - cur) < NCI_GUARD:
        return IndexValue.undefined("NC equals 1")
    return IndexValue.of((cur - prev) / (1.0 - prev) - (nxt - cur) / (1.0 - cur))


# --- baselines -------------------------------------------------------------

def calinski_harabasz(dataset: Dataset, partition: Partition, centroids=None,
                      squared: bool = False) -> IndexValue:
    """CH with plain distances, or the classic squared-distance form.

    ``squared=True`` is the between/within sum-of-squares ratio that
    most libraries report.
    """
    _require_k2(partition, "CH")
    cents = _prep(dataset, partition, centroids)
    n, k = dataset.n, partition.k
    xbar = global_centroid(dataset)
    to_global = np.sqrt(((cents - xbar) ** 2).sum(axis=1))
    to_own = _dist_to_centroid(dataset, partition, cents)
    if squared:
        to_global, to_own = to_global ** 2, to_own ** 2
    between = float(np.dot(partition.sizes, to_global))
    within = float(to_own.sum())
    if within == 0.0:
        return IndexValue.undefined("every point sits on its centroid")
    return IndexValue.of((n - k) / (k - 1) * between / within)


def chou_su_lai(dataset: Dataset, partition: Partition, centroids=None, d=None) -> IndexValue:
    _require_k2(partition, "CS")
    cents = _prep(dataset, partition, centroids)
    k = partition.k
    sep = _centroid_separations(cents)
    np.fill_diagonal(sep, np.inf)
    nearest = sep.min(axis=1)
    if np.any(nearest == 0.0):
        return IndexValue.undefined("coincident centroids")
    _, own_max = kernels.point_cluster_sums(_distances(dataset, d), partition.labels, k)
    numer = float((np.bincount(partition.labels, weights=own_max, minlength=k) / partition.sizes).sum())
    return IndexValue.of(numer / float(nearest.sum()))


def dunn(dataset: Dataset, partition: Partition, d=None) -> IndexValue:
    _require_k2(partition, "DI")
    _check_sizes(dataset, partition)
    mins, maxs, _ = kernels.pair_cluster_stats(_distances(dataset, d), partition.labels, partition.k)
    diameter = float(np.diag(maxs).max())
    if diameter == 0.0:
        return IndexValue.undefined("all clusters have zero diameter")
    off = ~np.eye(partition.k, dtype=bool)
    return IndexValue.of(float(mins[off].min()) / diameter)


def scatter_terms(dataset: Dataset, partition: Partition, centroids=None,
                  params: DBParameters = DBParameters(), star: bool = False) -> ScatterTerms:
    cents = _prep(dataset, partition, centroids)
    k = partition.k
    dist = _dist_to_centroid(dataset, partition, cents)
    s = (np.bincount(partition.labels, weights=dist ** params.q, minlength=k) / partition.sizes) ** (1.0 / params.q)
    diff = np.abs(cents[:, None, :] - cents[None, :, :])
    m = (diff ** params.t).sum(axis=2) ** (1.0 / params.t)
    off = ~np.eye(k, dtype=bool)
    pair_s = s[:, None] + s[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        if star:
            r = np.where(off, pair_s, -np.inf).max(axis=1) / np.where(off, m, np.inf).min(axis=1)
        else:
            r = np.where(off, pair_s / m, -np.inf).max(axis=1)
    return ScatterTerms(s=s, m=m, r=r)


def _db(dataset, partition, centroids, params, star):
    _require_k2(partition, "DB*" if star else "DB")
    terms = scatter_terms(dataset, partition, centroids, params, star)
    off = ~np.eye(partition.k, dtype=bool)
    if np.any(terms.m[off] == 0.0):
        return IndexValue.undefined("coincident centroids")
    return IndexValue.of(float(terms.r.mean()))


def davies_bouldin(dataset: Dataset, partition: Partition, centroids=None,
                   params: DBParameters = DBParameters()) -> IndexValue:
    return _db(dataset, partition, centroids, params, star=False)


def davies_bouldin_star(dataset: Dataset, partition: Partition, centroids=None,
                        params: DBParameters = DBParameters()) -> IndexValue:
    return _db(dataset, partition, centroids, params, star=True)


def gd33(dataset: Dataset, partition: Partition, centroids=None, d=None) -> IndexValue:
    """Generalized Dunn index 33: mean linkage over twice the mean centroid radius."""
    _require_k2(partition, "GD33")
    cents = _prep(dataset, partition, centroids)
    k = partition.k
    radius = np.bincount(partition.labels, weights=_dist_to_centroid(dataset, partition, cents), minlength=k)
    denom = float((2.0 * radius / partition.sizes).max())
    if denom == 0.0:
        return IndexValue.undefined("zero within-cluster spread")
    _, _, sums = kernels.pair_cluster_stats(_distances(dataset, d), partition.labels, k)
    mean_link = sums / np.outer(partition.sizes, partition.sizes)
    off = ~np.eye(k, dtype=bool)
    return IndexValue.of(float(mean_link[off].min()) / denom)


def point_biserial(d, partition: Partition) -> IndexValue:
    """Pearson between distances and the different-cluster indicator (1 = different)."""
    _require_k2(partition, "PB")
    d = np.asarray(d, dtype=np.float64)
    if d.size != partition.n * (partition.n - 1) // 2:
        raise ValueError("distance vector does not match the partition size")
    binary = kernels.same_cluster_indicator(partition.labels)
    if np.all(binary == binary[0]):
        return IndexValue.undefined("indicator vector is constant")
    return IndexValue.of(correlate(d, binary, "pearson"))


def silhouette_values(dataset: Dataset, partition: Partition, d=None) -> SilhouetteValues:
    _require_k2(partition, "SC")
    _check_sizes(dataset, partition)
    labels, sizes = partition.labels, partition.sizes
    sums, _ = kernels.point_cluster_sums(_distances(dataset, d), labels, partition.k)
    rows = np.arange(dataset.n)
    own = sizes[labels]
    a = np.where(own > 1, sums[rows, labels] / np.maximum(own - 1, 1), 0.0)
    means = sums / sizes[None, :]
    means[rows, labels] = np.inf
    b = means.min(axis=1)
    top = np.maximum(a, b)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where((own > 1) & (top > 0), (b - a) / top, 0.0)
    return SilhouetteValues(a=a, b=b, s=s)


def silhouette_coefficient(values: SilhouetteValues) -> IndexValue:
    return IndexValue.of(float(np.mean(values.s)))


def sf_components(dataset: Dataset, partition: Partition, centroids=None) -> SFComponents:
    cents = _prep(dataset, partition, centroids)
    n, k = dataset.n, partition.k
    xbar = global_centroid(dataset)
    bcd = float(np.dot(partition.sizes, np.sqrt(((cents - xbar) ** 2).sum(axis=1)))) / (n * k)
    radius = np.bincount(partition.labels, weights=_dist_to_centroid(dataset, partition, cents), minlength=k)
    wcd = float((radius / partition.sizes).sum())
    return SFComponents(bcd=bcd, wcd=wcd)


def score_function(dataset: Dataset, partition: Partition, centroids=None,
                   form: str = "double") -> IndexValue:
    """SF = 1 - exp(-exp(bcd + wcd)); ``form="single"`` gives 1 - exp(-(bcd + wcd)).

    Both are increasing in bcd + wcd, so they rank partitions identically;
    the double form reaches 1.0 in float64 once bcd + wcd exceeds about 3.6.
    """
    comp = sf_components(dataset, partition, centroids)
    x = comp.bcd + comp.wcd
    if form == "double":
        # exp overflows past ~709; the value is 1.0 in float64 long before that
        return IndexValue.of(-math.expm1(-math.exp(min(x, 700.0))))
    if form == "single":
        return IndexValue.of(-math.expm1(-x))
    raise ValueError(f"form must be 'double' or 'single', got {form!r}")


def baseline_indices(dataset: Dataset, partition: Partition, centroids=None, d=None,
                     params: DBParameters = DBParameters(), ch_squared: bool = False,
                     sf_form: str = "double") -> dict[str, IndexValue]:
    """All nine baselines for one partition, sharing centroids and distances."""
    cents = _prep(dataset, partition, centroids)
    d = _distances(dataset, d)
    return {
        "CH": calinski_harabasz(dataset, partition, cents, squared=ch_squared),
        "CS": chou_su_lai(dataset, partition, cents, d),
        "DI": dunn(dataset, partition, d),
        "DB": davies_bouldin(dataset, partition, cents, params),
        "DB*": davies_bouldin_star(dataset, partition, cents, params),
        "GD33": gd33(dataset, partition, cents, d),
        "PB": point_biserial(d, partition),
        "SC": silhouette_coefficient(silhouette_values(dataset, partition, d)),
        "SF": score_function(dataset, partition, cents, form=sf_form),
    }
