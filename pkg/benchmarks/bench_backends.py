"""Compare the compiled kernels against the pure-numpy fallback.

Run as: python benchmarks/bench_backends.py [--full]

The default workload is CI-sized; --full times a realistic entropy run
(60,000 training vectors, 100 epochs) plus the long-series estimators.
"""

import argparse
import time

import numpy as np


def _load_backends():
    from nneten import _kernels_py
    backends = [("numpy", _kernels_py)]
    try:
        from nneten import _kernels
        backends.insert(0, ("cython", _kernels))
    except ImportError:
        print("compiled extension not built; benchmarking the fallback only")
    return backends


def bench_training(backends, n_samples, epochs):
    rng = np.random.default_rng(0)
    hidden = np.ascontiguousarray(rng.random((n_samples, 26)))
    labels = np.ascontiguousarray(rng.integers(0, 10, n_samples), dtype=np.int64)
    results = {}
    print(f"\ntraining: {n_samples} samples x {epochs} epochs (10x26 online updates)")
    for name, mod in backends:
        w2 = np.full((10, 26), 0.5)
        start = time.perf_counter()
        mod.train_epochs(w2, hidden, labels, 0.2, epochs)
        elapsed = time.perf_counter() - start
        results[name] = (elapsed, w2)
        print(f"  {name:>7}: {elapsed:8.3f} s")
    _report_speedup(results, lambda a, b: float(np.abs(a[1] - b[1]).max()))


def bench_counts(backends, n, m):
    rng = np.random.default_rng(1)
    x = np.ascontiguousarray(rng.standard_normal(n))
    tol = 0.2
    results = {}
    print(f"\ntemplate counting: series length {n}, template length {m}")
    for name, mod in backends:
        start = time.perf_counter()
        counts = mod.template_match_counts(x, m, tol)
        elapsed = time.perf_counter() - start
        results[name] = (elapsed, counts)
        print(f"  {name:>7}: {elapsed:8.3f} s")
    _report_speedup(results, lambda a, b: float(np.abs(a[1] - b[1]).max()))


def _report_speedup(results, diff):
    if len(results) == 2:
        (fast, slow) = results["cython"], results["numpy"]
        print(f"  speedup: {slow[0] / max(fast[0], 1e-9):.1f}x, "
              f"max result difference {diff(fast, slow):.3g}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--full", action="store_true",
                        help="realistic workload sizes (minutes, not seconds)")
    args = parser.parse_args()
    backends = _load_backends()
    if args.full:
        bench_training(backends, 60_000, 100)
        bench_counts(backends, 19_625, 2)
    else:
        bench_training(backends, 5_000, 5)
        bench_counts(backends, 3_000, 2)


if __name__ == "__main__":
    main()
