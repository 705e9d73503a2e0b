"""Acceptance criteria, one test per criterion, each printing a PASS line.

Criteria 2-8 require the full MNIST dataset (60,000 / 10,000 samples); point
NNETEN_MNIST_DIR at a directory containing the four IDX files to enable them.
Without it they are skipped, not weakened. Criteria 1, 9, and 10 always run.
"""

import math
import time

import numpy as np
import pytest

import nneten
from nneten import mnist_io, perceptron, reservoir
from nneten.series_gen import TimeSeries
from conftest import real_mnist_dir
from test_baselines import brute_ap_en, brute_perm_en, brute_samp_en, random_suite
from test_reservoir import reference_fill

REFERENCE_R = {"r1": 3.60666667, "r2": 3.68833333, "r3": 3.835, "r4": 3.94833333}


def _passed(name, detail=""):
    print(f"ACCEPTANCE {name}: PASS {detail}")


@pytest.fixture(scope="module")
def full_mnist():
    directory = real_mnist_dir()
    if directory is None:
        pytest.skip("full MNIST dataset not available (set NNETEN_MNIST_DIR)")
    ds = mnist_io.load_dataset(directory)
    if ds.train_count != 60_000 or ds.test_count != 10_000:
        pytest.skip("dataset at NNETEN_MNIST_DIR is not the full 60k/10k MNIST")
    return ds


def _logistic(r, n=19625):
    return nneten.generate(nneten.default_params("logistic", r=r), n)


def test_criterion_01_figure_fill_exact():
    start = time.perf_counter()
    fm = nneten.fill_matrix(TimeSeries(np.arange(1.0, 10.0)), rows=4, cols=7)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    expected = np.array([
        [1, 5, 9, 1, 5, 9, 1],
        [2, 6, 0, 2, 6, 0, 2],
        [3, 7, 0, 3, 7, 0, 3],
        [4, 8, 0, 4, 8, 0, 4],
    ], dtype=float)
    assert np.array_equal(fm.entries, expected)
    assert elapsed_ms < 1.0
    _passed("1 (reference fill, exact)", f"{elapsed_ms:.3f} ms")


def test_criterion_02_random_series(full_mnist):
    series = nneten.generate(nneten.default_params("random", seed=1), 19625)
    start = time.perf_counter()
    report = nneten.nnet_en(series, full_mnist, epochs=100)
    elapsed = time.perf_counter() - start
    assert report.nneten == pytest.approx(0.7438, abs=0.03)
    assert elapsed < 120.0
    _passed("2 (random series)", f"NNetEn={report.nneten:.4f} in {elapsed:.1f}s")


def test_criterion_03_binary_series(full_mnist):
    series = nneten.generate(nneten.default_params("binary"), 19625)
    report = nneten.nnet_en(series, full_mnist, epochs=100)
    assert report.nneten == pytest.approx(0.2196, abs=0.03)
    _passed("3 (binary series)", f"NNetEn={report.nneten:.4f}")


def test_criterion_04_constant_series(full_mnist):
    values = {}
    for a in (1.0, -1.0, 10.0, 0.0):
        series = nneten.generate(nneten.default_params("constant", a=a), 19625)
        values[a] = nneten.nnet_en(series, full_mnist, epochs=100).nneten
    for a in (1.0, -1.0, 10.0):
        assert values[a] == pytest.approx(0.22, abs=0.03)
    for a, b in [(1.0, -1.0), (1.0, 10.0), (-1.0, 10.0)]:
        assert abs(values[a] - values[b]) <= 0.002
    assert values[0.0] == pytest.approx(0.1028, abs=0.02)
    _passed("4 (constant series)", str({k: round(v, 4) for k, v in values.items()}))


def test_criterion_05_reference_table_spot_checks(full_mnist):
    results = {name: nneten.nnet_en(_logistic(r), full_mnist, epochs=100).nneten
               for name, r in REFERENCE_R.items()}
    assert results["r1"] == pytest.approx(0.2208, abs=0.07)
    assert results["r4"] == pytest.approx(0.6928, abs=0.07)
    assert results["r1"] < results["r2"]
    assert results["r3"] < results["r4"]
    _passed("5 (table spot checks)", str({k: round(v, 4) for k, v in results.items()}))


def test_criterion_06_epoch_plateau(full_mnist):
    sweep = nneten.epoch_sweep(_logistic(3.8), [20, 100, 400], full_mnist)
    e20, e100, e400 = (row[1].nneten for row in sweep.rows)
    assert e400 >= e100 - 0.02
    assert e100 - 0.02 >= e20 - 0.04
    _passed("6 (epoch plateau)", f"e20={e20:.4f} e100={e100:.4f} e400={e400:.4f}")


def test_criterion_07_learning_inertia_peak(full_mnist):
    rows = []
    for r in [3.5 + i * 0.005 for i in range(41)]:
        report = nneten.learning_inertia(_logistic(r), 100, 400, full_mnist)
        rows.append((r, report.delta))
    r_star = max(rows, key=lambda row: row[1])[0]
    assert 3.55 <= r_star <= 3.65
    _passed("7 (learning inertia peak)", f"argmax at r={r_star:.5f}")


def test_criterion_08_length_stability(full_mnist):
    params = nneten.default_params("logistic", r=3.8)
    reference = nneten.nnet_en(_logistic(3.8), full_mnist, epochs=100).nneten
    sweep = nneten.length_sweep(params, [11000, 13000, 15000, 17000], full_mnist, epochs=100)
    for n, report in sweep.rows:
        assert abs(report.nneten - reference) <= 0.03
    _passed("8 (length stability)", f"reference={reference:.4f}")


def test_criterion_09_ap_en_reference_values():
    # rr calibrated as an absolute tolerance (see README, baseline calibration)
    expected = {"r1": 0.0, "r2": 0.374, "r3": 0.0, "r4": 0.588}
    got = {}
    for name, r in REFERENCE_R.items():
        got[name] = nneten.ap_en(_logistic(r).values, m=2, rr=0.025,
                                 tolerance_mode="absolute")
        assert got[name] == pytest.approx(expected[name], abs=0.06)
    _passed("9 (ApEn reference values)", str({k: round(v, 4) for k, v in got.items()}))


def test_criterion_10_property_suite(dataset):
    start = time.perf_counter()
    series = _logistic(3.8)

    # bit-exact determinism across two runs
    a = nneten.nnet_en(series, dataset, epochs=4)
    b = nneten.nnet_en(series, dataset, epochs=4)
    assert a.nneten == b.nneten

    # epoch-prefix consistency: sweep checkpoint equals standalone run, bit-exact
    sweep = nneten.epoch_sweep(series, [2, 4], dataset)
    assert sweep.rows[1][1].nneten == a.nneten
    assert sweep.rows[0][1].nneten == nneten.nnet_en(series, dataset, epochs=2).nneten

    # positive-scale invariance
    scaled = TimeSeries(5.0 * series.values)
    assert abs(nneten.nnet_en(scaled, dataset, epochs=4).nneten - a.nneten) <= 0.002

    # gradient vs central finite differences, 100 random samples
    rng = np.random.default_rng(123)
    step = 1e-6
    for _ in range(100):
        w2 = rng.uniform(-1.0, 1.0, (10, 26))
        s = perceptron.add_bias(rng.random((1, 25)))[0]
        t = np.eye(10)[int(rng.integers(0, 10))]
        o = perceptron.forward(w2, s)
        analytic = ((t - o) * o * (1 - o))[:, None] * s[None, :]
        numeric = np.empty_like(analytic)
        for k in range(10):
            for i in range(26):
                wp = w2.copy(); wp[k, i] += step
                wm = w2.copy(); wm[k, i] -= step
                op = perceptron.forward(wp, s)
                om = perceptron.forward(wm, s)
                numeric[k, i] = -(0.5 * np.sum((t - op) ** 2)
                                  - 0.5 * np.sum((t - om) ** 2)) / (2 * step)
        assert np.abs(numeric - analytic).max() / np.abs(analytic).max() <= 1e-5

    # brute-force fill equivalence on 1,000 random shapes
    shape_rng = np.random.default_rng(321)
    for _ in range(1000):
        rows = int(shape_rng.integers(1, 51))
        cols = int(shape_rng.integers(1, 51))
        n = int(shape_rng.integers(1, 2 * rows * cols + 1))
        values = shape_rng.standard_normal(n)
        fm = reservoir.fill_matrix(TimeSeries(values), rows, cols)
        assert np.array_equal(fm.entries, reference_fill(values, rows, cols))

    # estimator oracle equivalence on short series, 100 cases each
    for seed, which in ((11, "apen"), (12, "sampen"), (13, "peren")):
        for x in random_suite(cases=100, seed=seed):
            if which == "peren":
                assert abs(nneten.perm_en(x, 3, 1) - brute_perm_en(x, 3, 1)) <= 1e-12
                continue
            tol = 0.4 * float(np.std(x))
            if tol == 0.0:
                continue
            if which == "apen":
                assert abs(nneten.ap_en(x, 1, 0.4) - brute_ap_en(x, 1, tol)) <= 1e-12
            else:
                expected = brute_samp_en(x, 1, tol)
                got = nneten.samp_en(x, 1, 0.4)
                assert (math.isinf(expected) and math.isinf(got)) or \
                    abs(got - expected) <= 1e-12

    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    _passed("10 (property suite)", f"{elapsed:.1f}s")
