"""Time the numba and pure-numpy enumeration kernels on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload runs through every available backend; results must agree
exactly before any timing is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from hyperquery import _kernels
from hyperquery.construct import ConstructionConfig, build_search_set
from hyperquery.hypergraph import candidate_edges
from hyperquery.plan import incidence_matrix


def scan_workload(n, d, m, p):
    plan = build_search_set(n, d, m, ConstructionConfig(), 0)
    M = incidence_matrix(plan.masks(), candidate_edges(n, d), n)
    weights = np.arange(1, p)
    # zero target over 1..2m columns: the detecting check behind search verification
    return lambda backend: _kernels.scan_combinations(M, np.zeros(M.shape[0]), 1, 2 * m, weights, p, 1, backend=backend)


def labeling_workload(n, d, p, seed=0):
    rng = np.random.default_rng(seed)
    idx = np.sort(rng.integers(0, n, size=(6, d)), axis=1)
    vals = rng.integers(1, p, size=6)
    return lambda backend: _kernels.count_zero_labelings(idx, vals, n, d, p, backend=backend)


WORKLOADS = {
    "scan n=5 d=2 m=1 p=5": lambda: scan_workload(5, 2, 1, 5),
    "scan n=6 d=2 m=1 p=5": lambda: scan_workload(6, 2, 1, 5),
    "scan n=5 d=2 m=2 p=5": lambda: scan_workload(5, 2, 2, 5),
    "labelings n=8 d=2 p=7": lambda: labeling_workload(8, 2, 7),
    "labelings n=10 d=2 p=7": lambda: labeling_workload(10, 2, 7),
}


def best_of(fn, backend, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(backend)
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    backends = ["numpy"] + (["numba"] if _kernels._scan_numba is not None else [])
    if len(backends) == 1:
        print("numba unavailable; timing the numpy backend only")
    print(f"{'workload':28s}" + "".join(f"{b:>12s}" for b in backends) + f"{'speedup':>10s}")
    for name, make in WORKLOADS.items():
        fn = make()
        if "numba" in backends:
            fn("numba")  # compile outside the timed region
        results = {b: best_of(fn, b, args.repeat) for b in backends}
        outs = {repr(out) for _, out in results.values()}
        if len(outs) != 1:
            raise SystemExit(f"{name}: backends disagree: {outs}")
        row = f"{name:28s}" + "".join(f"{results[b][0]:11.4f}s" for b in backends)
        if "numba" in backends:
            row += f"{results['numpy'][0] / results['numba'][0]:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
