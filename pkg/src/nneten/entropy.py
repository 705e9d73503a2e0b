"""The NNetEn pipeline: reservoir fill, cached activations, training, and the
sweeps behind the figure reproductions."""

import csv
import hashlib
import time
from dataclasses import dataclass

import numpy as np

from . import perceptron, reservoir, series_gen
from .mnist_io import MnistDataset
from .series_gen import EmptySeries, MapParams, TimeSeries

DEFAULT_EPOCHS = 100
SERIES_LENGTH = reservoir.ELEMENTS  # 19,625


class ZeroDenominator(ArithmeticError):
    """Learning inertia is undefined when the later-epoch entropy is zero."""


class InvalidGrid(ValueError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    pattern_id: str = "identity"
    learning_rate: float = perceptron.LEARNING_RATE
    sample_order: str = "dataset"

    def fingerprint(self) -> str:
        tag = (
            f"pattern={self.pattern_id};lr={self.learning_rate!r};"
            f"order={self.sample_order};activation=sigmoid;loss=squared-error;"
            f"norm=minmax;hidden-bias=1"
        )
        return hashlib.sha256(tag.encode()).hexdigest()[:12]


DEFAULT_CONFIG = PipelineConfig()


@dataclass(frozen=True)
class EntropyReport:
    nneten: float
    epochs: int
    accuracy_percent: float
    train_count: int
    test_count: int
    series_meta: dict
    fingerprint: str
    wall_ms: float


@dataclass(frozen=True)
class InertiaReport:
    ep1: int
    ep2: int
    nneten_ep1: float
    nneten_ep2: float
    delta: float


@dataclass(frozen=True)
class SweepResult:
    param_name: str
    rows: list  # [(param value, EntropyReport | None)]

    def write_csv(self, fh) -> None:
        writer = csv.writer(fh)
        writer.writerow(["param", "nneten", "accuracy_percent", "epochs", "wall_ms"])
        for value, report in self.rows:
            if report is None:
                writer.writerow([value, "", "", "", ""])
            else:
                writer.writerow([value, repr(report.nneten), repr(report.accuracy_percent),
                                 report.epochs, f"{report.wall_ms:.1f}"])


def _prepare_hidden(series: TimeSeries, dataset: MnistDataset, config: PipelineConfig):
    """Fill the reservoir and cache normalized (bias-appended) hidden vectors.

    The reservoir is frozen, so activations for both splits are computed once;
    training never touches it again.
    """
    if len(series) == 0:
        raise EmptySeries("cannot compute entropy of an empty series")
    w1 = reservoir.fill_matrix(series)
    raw_train = reservoir.raw_activations_batch(w1, dataset.train_images)
    coeffs = reservoir.NormCoeffs(mins=raw_train.min(axis=0), maxs=raw_train.max(axis=0))
    h_train = perceptron.add_bias(reservoir.normalize(raw_train, coeffs))
    raw_test = reservoir.raw_activations_batch(w1, dataset.test_images)
    h_test = perceptron.add_bias(reservoir.normalize(raw_test, coeffs))
    return h_train, h_test


def _report(accuracy, epochs, dataset, series, config, wall_ms) -> EntropyReport:
    return EntropyReport(
        nneten=accuracy,
        epochs=epochs,
        accuracy_percent=accuracy * 100.0,
        train_count=dataset.train_count,
        test_count=dataset.test_count,
        series_meta=dict(series.meta),
        fingerprint=config.fingerprint(),
        wall_ms=wall_ms,
    )


def nnet_en(series: TimeSeries, dataset: MnistDataset, epochs: int = DEFAULT_EPOCHS,
            config: PipelineConfig = DEFAULT_CONFIG) -> EntropyReport:
    """Entropy of the series: test accuracy (as a fraction) after training."""
    result = epoch_sweep(series, [epochs], dataset, config)
    return result.rows[0][1]


def epoch_sweep(series: TimeSeries, checkpoints, dataset: MnistDataset,
                config: PipelineConfig = DEFAULT_CONFIG) -> SweepResult:
    """One training run evaluated at each checkpoint.

    Online training makes a longer run an exact continuation of a shorter one,
    so each checkpoint row is bit-identical to a standalone run at that epoch
    count.
    """
    checkpoints = [int(c) for c in checkpoints]
    if not checkpoints or any(c < 1 for c in checkpoints):
        raise InvalidGrid("epoch checkpoints must be positive")
    if sorted(checkpoints) != checkpoints:
        raise InvalidGrid("epoch checkpoints must be ascending")
    start = time.perf_counter()
    h_train, h_test = _prepare_hidden(series, dataset, config)
    labels = np.ascontiguousarray(dataset.train_labels, dtype=np.int64)
    w2 = perceptron.init_weights()
    rows = []
    done = 0
    for checkpoint in checkpoints:
        perceptron.train_epochs(w2, h_train, labels, config.learning_rate,
                                checkpoint - done)
        done = checkpoint
        accuracy = perceptron.evaluate(w2, h_test, dataset.test_labels)
        wall_ms = (time.perf_counter() - start) * 1000.0
        rows.append((checkpoint, _report(accuracy, checkpoint, dataset, series, config, wall_ms)))
    return SweepResult("epochs", rows)


def learning_inertia(series: TimeSeries, ep1: int, ep2: int, dataset: MnistDataset,
                     config: PipelineConfig = DEFAULT_CONFIG) -> InertiaReport:
    """Relative entropy gap between two epoch counts, from a single run."""
    if not 1 <= ep1 < ep2:
        raise InvalidGrid(f"need 1 <= ep1 < ep2, got {ep1}, {ep2}")
    sweep = epoch_sweep(series, [ep1, ep2], dataset, config)
    e1 = sweep.rows[0][1].nneten
    e2 = sweep.rows[1][1].nneten
    if e2 == 0.0:
        raise ZeroDenominator("entropy at ep2 is zero")
    return InertiaReport(ep1=ep1, ep2=ep2, nneten_ep1=e1, nneten_ep2=e2,
                         delta=(e2 - e1) / e2)


def r_grid(r_start: float, r_end: float, r_step: float):
    if r_step <= 0:
        raise InvalidGrid("r_step must be positive")
    count = int(np.floor((r_end - r_start) / r_step + 1e-9)) + 1
    if count < 1:
        raise InvalidGrid("empty r grid")
    return [r_start + i * r_step for i in range(count)]


def r_sweep(kind: str, r_start: float, r_end: float, r_step: float,
            dataset: MnistDataset, epochs: int = DEFAULT_EPOCHS,
            config: PipelineConfig = DEFAULT_CONFIG,
            seed: int = 0) -> SweepResult:
    """Entropy across a control-parameter grid; divergent points become
    missing-value rows instead of aborting the sweep."""
    rows = []
    for r in r_grid(r_start, r_end, r_step):
        params = series_gen.default_params(kind, r=r, seed=seed)
        try:
            series = series_gen.generate(params, SERIES_LENGTH)
        except series_gen.Divergence:
            rows.append((r, None))
            continue
        rows.append((r, nnet_en(series, dataset, epochs, config)))
    return SweepResult("r", rows)


def inertia_r_sweep(kind: str, r_start: float, r_end: float, r_step: float,
                    ep1: int, ep2: int, dataset: MnistDataset,
                    config: PipelineConfig = DEFAULT_CONFIG) -> list:
    """Learning inertia across an r grid: [(r, InertiaReport | None)]."""
    rows = []
    for r in r_grid(r_start, r_end, r_step):
        params = series_gen.default_params(kind, r=r)
        try:
            series = series_gen.generate(params, SERIES_LENGTH)
            rows.append((r, learning_inertia(series, ep1, ep2, dataset, config)))
        except (series_gen.Divergence, ZeroDenominator):
            rows.append((r, None))
    return rows


def length_sweep(source, lengths, dataset: MnistDataset, epochs: int = DEFAULT_EPOCHS,
                 config: PipelineConfig = DEFAULT_CONFIG) -> SweepResult:
    """Entropy for increasing series lengths.

    `source` is either MapParams (each length generated fresh) or a TimeSeries
    whose prefix of each length is used.
    """
    lengths = [int(n) for n in lengths]
    if not lengths or any(n < 1 for n in lengths):
        raise InvalidGrid("lengths must be positive")
    if sorted(lengths) != lengths:
        raise InvalidGrid("lengths must be ascending")
    rows = []
    for n in lengths:
        if isinstance(source, MapParams):
            series = series_gen.generate(source, n)
        else:
            if n > len(source):
                raise InvalidGrid(f"length {n} exceeds series length {len(source)}")
            series = TimeSeries(source.values[:n], meta=dict(source.meta, truncated_to=n))
        rows.append((n, nnet_en(series, dataset, epochs, config)))
    return SweepResult("n", rows)
