import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncvalid.core import Dataset
from ncvalid.indices import MAXIMIZE, MINIMIZE, IndexValue, nci1, nci2, sf_components
from ncvalid.kmeans import KMeansConfig
from ncvalid.sweep import KSweepTable, SweepConfig, find_peaks, optimum, recommend, run_sweep

# published-style rows for a four-disk layout (k = 2..9) and a nine-disk layout (k = 2..13)
NEAR_PAIRS_NCI1 = [3.101, 0.353, 6.365, 0.850, 0.700, 1.232, 1.333, 1.198]
TRIADS_NCI2 = [-0.179, 0.554, 0.074, -0.221, 0.157, -0.070, -0.346, 0.557, 0.028, -0.042, 0.030, 0.025]
TRIADS_NC = [0.591, 0.906, 0.926, 0.937, 0.960, 0.968, 0.977, 0.991, 0.992, 0.992, 0.993, 0.993]


def test_find_peaks_basic_examples():
    assert find_peaks([1, 3, 2, 5, 4], MAXIMIZE).ks == [3, 1]
    assert find_peaks([1, 2, 3, 4], MAXIMIZE).ks == [3]
    assert find_peaks([1, 2, 3, 4], MINIMIZE).ks == [0]
    assert find_peaks([7.0], MAXIMIZE).ks == [0]
    assert find_peaks([math.nan, math.nan], MAXIMIZE).ks == []


def test_find_peaks_plateaus_are_not_peaks():
    assert find_peaks([1, 3, 3, 1], MAXIMIZE).ks == []


def test_find_peaks_undefined_neighbours_lose():
    assert find_peaks([math.nan, 1.0, math.nan, 0.5], MAXIMIZE).ks == [1, 3]
    assert find_peaks([math.nan, 1.0, math.nan, 0.5], MINIMIZE).ks == [3, 1]


def test_find_peaks_ties_rank_smaller_k_first():
    assert find_peaks({2: 5.0, 3: 1.0, 4: 5.0}, MAXIMIZE).ks == [2, 4]


def test_find_peaks_reports_values_and_accepts_k_values():
    pl = find_peaks(NEAR_PAIRS_NCI1, MAXIMIZE, range(2, 10))
    assert pl.ks[:2] == [4, 2]
    assert pl.peaks[0] == (4, 6.365)
    assert len(pl) == 3 and pl.ks[2] == 8


def test_find_peaks_on_triad_row():
    pl = find_peaks(TRIADS_NCI2, MAXIMIZE, range(2, 14))
    assert pl.ks[:3] == [9, 3, 6]
    # the strict rule also admits the tiny bump at 12
    assert pl.ks == [9, 3, 6, 12]


def test_find_peaks_errors():
    with pytest.raises(ValueError):
        find_peaks([1, 2], "sideways")
    with pytest.raises(ValueError):
        find_peaks([1, 2], MAXIMIZE, [2, 3, 4])


@given(st.lists(st.floats(-50, 50), min_size=1, max_size=15),
       st.sampled_from([np.exp, np.arctan, lambda x: 3 * x - 1, np.cbrt]))
def test_find_peaks_invariant_under_monotone_maps(vals, f):
    a = np.array(vals)
    b = f(a)
    # a monotone map can merge nearly equal floats; only compare when it stays strictly ordered
    if len(set(b.tolist())) != len(set(a.tolist())):
        return
    assert set(find_peaks(a, MAXIMIZE).ks) == set(find_peaks(b, MAXIMIZE).ks)
    assert find_peaks(a, MAXIMIZE).ks == find_peaks(b, MAXIMIZE).ks


@given(st.lists(st.floats(-50, 50), min_size=1, max_size=15))
def test_peaks_match_brute_force_and_minimize_mirrors(vals):
    got = find_peaks(vals, MAXIMIZE)
    brute = [i for i, v in enumerate(vals)
             if (i == 0 or v > vals[i - 1]) and (i == len(vals) - 1 or v > vals[i + 1])]
    assert sorted(got.ks) == brute
    assert [v for _, v in got] == sorted((v for _, v in got), reverse=True)
    assert find_peaks([-v for v in vals], MINIMIZE).ks == got.ks
    best = optimum(vals, MAXIMIZE)
    assert vals[best] == max(vals)
    if got.ks:
        assert got.peaks[0][1] <= vals[best]


def test_optimum():
    assert optimum([3, 1, 3], MAXIMIZE) == 0
    assert optimum({2: 0.5, 3: 0.1}, MINIMIZE) == 3
    assert optimum([math.nan, math.inf], MAXIMIZE) is None


def test_config_validation():
    for bad in (dict(kmin=1), dict(kmin=5, kmax=4), dict(nc_threshold=1.5), dict(method="cosine")):
        with pytest.raises(ValueError):
            SweepConfig(**bad)
    with pytest.raises(ValueError):
        run_sweep(Dataset(np.arange(5.0)), SweepConfig(kmin=2, kmax=5))


def _blobs(seed=0):
    rng = np.random.default_rng(seed)
    centers = [(0, 0), (6, 0), (0, 6)]
    return Dataset(np.vstack([rng.normal(c, 0.4, size=(25, 2)) for c in centers]))


def _cfg(**kw):
    return SweepConfig(kmeans=KMeansConfig(k=2, restarts=5, seed=1), **kw)


def test_toy_sweep_single_k(toy):
    ds, _ = toy
    t = run_sweep(ds, _cfg(kmin=2, kmax=2))
    assert t.k_values == [2]
    assert sorted(t.nc) == [1, 2, 3]
    assert t.nc[2].value == pytest.approx(12 / math.sqrt(110 * 4 / 3), rel=1e-9)
    assert sorted(t.clusterings) == [2, 3]


def test_sweep_table_is_internally_consistent():
    t = run_sweep(_blobs(), _cfg(kmin=2, kmax=6))
    assert sorted(t.clusterings) == list(range(2, 8))
    ncs = t.nc_values()
    for k in t.k_values:
        assert t.get("NCI1", k) == nci1(ncs, k)
        assert t.get("NCI2", k) == nci2(ncs, k)
        for name in ("CH", "SC", "SF"):
            assert t.get(name, k).defined
    assert t.optimum("NCI1") == 3
    assert t.peaks("NCI2").ks[0] == 3
    assert len(t.values("NC")) == len(t.k_values)


def test_sweep_with_kmin_above_two_clusters_kmin_minus_one():
    t = run_sweep(_blobs(), _cfg(kmin=3, kmax=4))
    assert sorted(t.clusterings) == [2, 3, 4, 5]
    assert sorted(t.nc) == [1, 2, 3, 4, 5]


def test_sweep_threads_match_sequential():
    a = run_sweep(_blobs(), _cfg(kmin=2, kmax=5))
    b = run_sweep(_blobs(), _cfg(kmin=2, kmax=5, n_jobs=3))
    for name in ("NC", "NCI1", "CH", "DB"):
        assert np.array_equal(a.values(name), b.values(name), equal_nan=True)


def test_sf_rank_key_breaks_saturation():
    # large spreads saturate the double exponential at 1.0
    ds = Dataset(_blobs().points * 50)
    t = run_sweep(ds, _cfg(kmin=2, kmax=5))
    assert np.all(t.values("SF") == 1.0)
    keys = {k: sf_components(ds, r.partition).bcd + sf_components(ds, r.partition).wcd
            for k, r in t.clusterings.items() if k in t.k_values}
    assert t.optimum("SF") == min(keys, key=keys.get)
    assert len(set(keys.values())) == len(keys)


def _table_from(nc_row, ks):
    ncs = {1: 0.0, **{k: v for k, v in zip(range(2, 2 + len(nc_row)), nc_row)}}
    nc = {k: IndexValue(v) for k, v in ncs.items()}
    series = {"NCI2": {k: nci2(ncs, k) for k in ks}, "NCI1": {k: nci1(ncs, k) for k in ks}}
    return KSweepTable(k_values=list(ks), nc=nc, series=series, clusterings={})


def test_recommend_gates_on_nc():
    t = _table_from(TRIADS_NC, range(2, 13))
    rec = recommend(t, "NCI2", 0.8)
    assert set(rec.ks) >= {3, 6, 9}
    for c in rec.candidates:
        assert c.nc_ok == (c.nc >= 0.8)
        assert c.k in t.k_values
    low = recommend(_table_from([0.654, 0.727, 0.890, 0.901], range(2, 4)), "NCI1", 0.8)
    flagged = {c.k: c.nc_ok for c in low.candidates}
    assert flagged.get(2) is False


def test_recommend_empty_and_errors():
    t = _table_from([0.5, 0.5, 0.5], [2])
    assert recommend(t, "NCI1").candidates == []
    with pytest.raises(ValueError):
        recommend(t, "CH")
