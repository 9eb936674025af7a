"""k-sweeps, peak detection and NC-gated recommendations."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from .core import Dataset
from .indices import (
    BASELINES,
    MAXIMIZE,
    MINIMIZE,
    ORIENTATION,
    DBParameters,
    IndexValue,
    baseline_indices,
    nc,
    nci1,
    nci2,
    sf_components,
)
from .kmeans import KMeansConfig, KMeansResult, kmeans_multistart
from .metrics import CorrelationMethod, centroid_pair_vector, pairwise_distances

SERIES = ("NCI1", "NCI2") + BASELINES


@dataclass(frozen=True)
class SweepConfig:
    kmin: int = 2
    kmax: int = 9
    kmeans: KMeansConfig = field(default_factory=lambda: KMeansConfig(k=2))
    method: str = "pearson"
    nc_threshold: float = 0.8
    db_params: DBParameters = field(default_factory=DBParameters)
    ch_squared: bool = False
    sf_form: str = "double"
    n_jobs: int = 1

    def __post_init__(self):
        CorrelationMethod(self.method)
        if not 2 <= self.kmin <= self.kmax:
            raise ValueError(f"need 2 <= kmin <= kmax, got kmin={self.kmin}, kmax={self.kmax}")
        if not 0.0 <= self.nc_threshold <= 1.0:
            raise ValueError(f"nc_threshold must lie in [0, 1], got {self.nc_threshold}")

    def validate_for(self, n: int):
        if self.kmax + 1 > n:
            raise ValueError(f"kmax+1={self.kmax + 1} exceeds n={n}; NCI at kmax needs a (kmax+1)-clustering")


@dataclass
class KSweepTable:
    """Every measure for every swept k, all computed from the same clusterings.

    ``nc`` runs over 1..kmax+1; the other series over ``k_values``.
    ``clusterings`` includes the extra kmax+1 run. ``rank_keys`` holds
    an order-equivalent stand-in for series whose float values saturate
    (SF is ranked by bcd + wcd).
    """

    k_values: list[int]
    nc: dict[int, IndexValue]
    series: dict[str, dict[int, IndexValue]]
    clusterings: dict[int, KMeansResult] = field(repr=False)
    method: str = "pearson"
    rank_keys: dict[str, dict[int, float]] = field(default_factory=dict, repr=False)

    def values(self, name: str) -> np.ndarray:
        """A series as floats over ``k_values`` (nan where undefined)."""
        src = self.nc if name == "NC" else self.series[name]
        return np.array([src[k].value if src[k].defined else math.nan for k in self.k_values])

    def get(self, name: str, k: int) -> IndexValue:
        return (self.nc if name == "NC" else self.series[name])[k]

    def nc_values(self) -> dict[int, float]:
        return {k: v.value for k, v in self.nc.items()}

    def _ranking(self, name: str) -> np.ndarray:
        keys = self.rank_keys.get(name)
        if keys is None:
            return self.values(name)
        vals = self.values(name)
        return np.array([keys[k] if math.isfinite(v) else math.nan for k, v in zip(self.k_values, vals)])

    def optimum(self, name: str) -> int | None:
        return optimum(self._ranking(name), ORIENTATION[name], self.k_values)

    def peaks(self, name: str) -> "PeakList":
        ranked = find_peaks(self._ranking(name), ORIENTATION[name], self.k_values)
        return PeakList([(k, self.get(name, k).value) for k in ranked.ks], ranked.orientation)


@dataclass(frozen=True)
class PeakList:
    peaks: list[tuple[int, float]]
    orientation: str

    @property
    def ks(self) -> list[int]:
        return [k for k, _ in self.peaks]

    def __len__(self):
        return len(self.peaks)

    def __iter__(self):
        return iter(self.peaks)


@dataclass(frozen=True)
class Candidate:
    k: int
    value: float
    nc: float
    nc_ok: bool


@dataclass(frozen=True)
class Recommendation:
    index: str
    nc_threshold: float
    candidates: list[Candidate]

    @property
    def ks(self) -> list[int]:
        return [c.k for c in self.candidates]


def _score(v, orientation):
    if v is None or not math.isfinite(v):
        return -math.inf
    return v if orientation == MAXIMIZE else -v


def _as_series(series, k_values):
    if isinstance(series, Mapping):
        ks = sorted(series) if k_values is None else list(k_values)
        vals = [series[k] for k in ks]
    else:
        vals = list(series)
        ks = list(range(len(vals))) if k_values is None else list(k_values)
    if len(ks) != len(vals):
        raise ValueError("k_values and series differ in length")
    vals = [v.value if isinstance(v, IndexValue) else v for v in vals]
    return ks, vals


def find_peaks(series, orientation: str, k_values: Sequence[int] | None = None) -> PeakList:
    """Strict local optima, best first.

    An entry is a peak when it is defined and strictly better than each
    immediate neighbour; an endpoint only needs to beat its one neighbour
    and undefined neighbours always lose. Equal values rank the smaller k
    first. ``series`` is a sequence (paired with ``k_values``, default
    0, 1, ...) or a mapping k -> value.
    """
    if orientation not in (MAXIMIZE, MINIMIZE):
        raise ValueError(f"orientation must be {MAXIMIZE!r} or {MINIMIZE!r}")
    ks, vals = _as_series(series, k_values)
    scores = [_score(v, orientation) for v in vals]
    found = []
    for i, s in enumerate(scores):
        if s == -math.inf:
            continue
        left = scores[i - 1] if i > 0 else -math.inf
        right = scores[i + 1] if i + 1 < len(scores) else -math.inf
        if s > left and s > right:
            found.append((ks[i], float(vals[i]), s))
    found.sort(key=lambda t: (-t[2], t[0]))
    return PeakList([(k, v) for k, v, _ in found], orientation)


def optimum(series, orientation: str, k_values: Sequence[int] | None = None) -> int | None:
    """The k with the best defined value (smaller k on ties), or None."""
    ks, vals = _as_series(series, k_values)
    best = None
    for k, v in zip(ks, vals):
        s = _score(v, orientation)
        if s == -math.inf:
            continue
        if best is None or s > best[0]:
            best = (s, k)
    return None if best is None else best[1]


def _cluster(dataset, config, k):
    return kmeans_multistart(dataset, replace(config.kmeans, k=k))


def run_sweep(dataset: Dataset, config: SweepConfig = SweepConfig()) -> KSweepTable:
    """Cluster every k in kmin..kmax+1 once and score all measures."""
    config.validate_for(dataset.n)
    ks = list(range(config.kmin, config.kmax + 2))
    if config.n_jobs > 1:
        with ThreadPoolExecutor(max_workers=config.n_jobs) as pool:
            runs = dict(zip(ks, pool.map(lambda k: _cluster(dataset, config, k), ks)))
    else:
        runs = {k: _cluster(dataset, config, k) for k in ks}

    d = pairwise_distances(dataset)
    ncs: dict[int, IndexValue] = {1: IndexValue(0.0)}
    if config.kmin > 2:
        # NCI(kmin) needs NC(kmin-1)
        runs[config.kmin - 1] = _cluster(dataset, config, config.kmin - 1)
    for k, res in sorted(runs.items()):
        c = centroid_pair_vector(dataset, res.partition, res.centroids)
        ncs[k] = nc(d, c, config.method)

    k_values = list(range(config.kmin, config.kmax + 1))
    series: dict[str, dict[int, IndexValue]] = {name: {} for name in SERIES}
    sf_keys: dict[int, float] = {}
    for k in k_values:
        series["NCI1"][k] = nci1(ncs, k)
        series["NCI2"][k] = nci2(ncs, k)
        res = runs[k]
        vals = baseline_indices(dataset, res.partition, res.centroids, d, config.db_params,
                                ch_squared=config.ch_squared, sf_form=config.sf_form)
        for name, val in vals.items():
            series[name][k] = val
        comp = sf_components(dataset, res.partition, res.centroids)
        sf_keys[k] = comp.bcd + comp.wcd
    return KSweepTable(k_values=k_values, nc=ncs, series=series, clusterings=runs,
                       method=config.method, rank_keys={"SF": sf_keys})


def recommend(table: KSweepTable, index: str = "NCI1", nc_threshold: float = 0.8) -> Recommendation:
    """Peaks of NCI1 or NCI2, each annotated with NC(k) and the NC gate."""
    if index not in ("NCI1", "NCI2"):
        raise ValueError(f"recommendations rank NCI1 or NCI2, got {index!r}")
    cands = []
    for k, v in table.peaks(index):
        ncv = table.nc[k].value
        cands.append(Candidate(k=k, value=v, nc=ncv, nc_ok=bool(math.isfinite(ncv) and ncv >= nc_threshold)))
    return Recommendation(index=index, nc_threshold=nc_threshold, candidates=cands)


__all__ = [
    "SERIES",
    "SweepConfig",
    "KSweepTable",
    "PeakList",
    "Candidate",
    "Recommendation",
    "find_peaks",
    "optimum",
    "run_sweep",
    "recommend",
    "MAXIMIZE",
    "MINIMIZE",
]
