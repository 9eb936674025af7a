"""Compare the compiled and numpy kernel backends.

Times each hot loop on both backends and a full k-means sweep with the
active backend swapped in, then prints one table row per case.

Usage
-----
    python benchmarks/bench_kernels.py [--n 1500] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from ncvalid import kernels
from ncvalid.datagen import scenario1
from ncvalid.kmeans import KMeansConfig
from ncvalid.sweep import SweepConfig, run_sweep


def _cases(n, p, k, rng):
    X = rng.normal(size=(n, p))
    C = rng.normal(size=(k, p))
    labels = rng.integers(0, k, size=n).astype(np.int64)
    d = kernels.get_backend("python").pdist(X)
    ranks = rng.permutation(2000).astype(np.int64)
    return {
        "pdist": lambda b: b.pdist(X),
        "assign_labels": lambda b: b.assign_labels(X, C),
        "pair_cluster_stats": lambda b: b.pair_cluster_stats(d, labels, k),
        "point_cluster_sums": lambda b: b.point_cluster_sums(d, labels, k),
        "count_inversions": lambda b: b.count_inversions(ranks),
    }


def _best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def _sweep(backend, repeat):
    ds = scenario1(seed=0).dataset
    cfg = SweepConfig(kmin=2, kmax=6, kmeans=KMeansConfig(k=2, restarts=5, seed=0))
    saved = kernels._impl
    kernels._impl = backend
    try:
        return _best(lambda: run_sweep(ds, cfg), repeat)
    finally:
        kernels._impl = saved


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1500)
    ap.add_argument("--p", type=int, default=4)
    ap.add_argument("--k", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    names = kernels.available_backends()
    backends = {name: kernels.get_backend(name) for name in names}
    cases = _cases(args.n, args.p, args.k, np.random.default_rng(0))

    print(f"n={args.n} p={args.p} k={args.k} repeat={args.repeat} backends={','.join(names)}")
    print(f"{'case':<22}" + "".join(f"{name + ' [ms]':>16}" for name in names) + f"{'speedup':>10}")
    rows = [(case, {name: _best(lambda: fn(b), args.repeat) for name, b in backends.items()})
            for case, fn in cases.items()]
    rows.append(("sweep k=2..6 (n=1000)", {name: _sweep(b, max(1, args.repeat // 2)) for name, b in backends.items()}))
    for case, times in rows:
        line = f"{case:<22}" + "".join(f"{1e3 * times[name]:>16.2f}" for name in names)
        if "cython" in times:
            line += f"{times['python'] / times['cython']:>10.1f}x"
        print(line)


if __name__ == "__main__":
    main()
