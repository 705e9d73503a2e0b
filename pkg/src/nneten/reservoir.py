"""The fixed input-mixing matrix: column-by-column filling from a time series,
raw hidden activations, and per-neuron min-max normalization."""

import csv
from dataclasses import dataclass

import numpy as np

from .series_gen import InvalidParam, TimeSeries

ROWS = 25
COLS = 785
ELEMENTS = ROWS * COLS  # 19,625


@dataclass(frozen=True)
class ReservoirMatrix:
    entries: np.ndarray  # (rows, cols)
    series_length: int
    zero_padded_cells: int
    ignored_leading: int

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


@dataclass(frozen=True)
class NormCoeffs:
    mins: np.ndarray  # (rows,)
    maxs: np.ndarray

    @property
    def degenerate(self) -> np.ndarray:
        """Mask of neurons whose activations never varied on the training set."""
        return self.mins == self.maxs


def fill_matrix(series: TimeSeries, rows: int = ROWS, cols: int = COLS) -> ReservoirMatrix:
    """Fill a rows x cols matrix column by column from the series.

    Long series (N >= rows*cols): the leading N - rows*cols elements are
    dropped (transients) and the rest tile the matrix exactly, one column at
    a time, top to bottom.

    Short series: columns are filled top to bottom from a pointer that walks
    the series; when the series runs out mid-column the rest of that column
    is zero and the pointer restarts at the first element on the next column.
    """
    x = np.asarray(series.values, dtype=np.float64)
    n = x.shape[0]
    if n < 1:
        raise InvalidParam("series is empty")
    if rows < 1 or cols < 1:
        raise InvalidParam(f"matrix shape must be positive, got {rows}x{cols}")
    m = rows * cols
    if n >= m:
        retained = x[n - m:]
        entries = retained.reshape(cols, rows).T.copy()
        return ReservoirMatrix(entries, n, 0, n - m)
    entries = np.zeros((rows, cols))
    zero_cells = 0
    ptr = 0
    for col in range(cols):
        for row in range(rows):
            if ptr == n:
                zero_cells += rows - row
                ptr = 0
                break
            entries[row, col] = x[ptr]
            ptr += 1
    return ReservoirMatrix(entries, n, zero_cells, 0)


def _input_matrix(images: np.ndarray, pattern=None) -> np.ndarray:
    """Images (n, 784) uint8 -> input vectors (n, 785): bias 1.0 then pixels/255.

    `pattern` is an optional pixel-order permutation: pixel i lands at
    component pattern[i] + 1.
    """
    images = np.asarray(images)
    n = images.shape[0]
    y = np.empty((n, images.shape[1] + 1))
    y[:, 0] = 1.0
    pixels = images.astype(np.float64) / 255.0
    if pattern is None:
        y[:, 1:] = pixels
    else:
        pattern = np.asarray(pattern)
        y[:, 1 + pattern] = pixels
    return y


def raw_activations(w1: ReservoirMatrix, image: np.ndarray, pattern=None) -> np.ndarray:
    """Hidden activations for one image: entries @ input vector."""
    return raw_activations_batch(w1, np.asarray(image).reshape(1, -1), pattern)[0]


def raw_activations_batch(w1: ReservoirMatrix, images: np.ndarray, pattern=None) -> np.ndarray:
    """Hidden activations for a stack of images, shape (n, rows)."""
    return _input_matrix(images, pattern) @ w1.entries.T


def compute_norm_coeffs(w1: ReservoirMatrix, train_images: np.ndarray, pattern=None) -> NormCoeffs:
    """Per-neuron min/max of raw activations over the training images."""
    if len(train_images) == 0:
        raise InvalidParam("training split is empty")
    raw = raw_activations_batch(w1, train_images, pattern)
    return NormCoeffs(mins=raw.min(axis=0), maxs=raw.max(axis=0))


def normalize(raw: np.ndarray, coeffs: NormCoeffs) -> np.ndarray:
    """Min-max rescale; degenerate neurons map to 0; no clamping.

    Works on a single activation vector or a (n, rows) batch.
    """
    span = coeffs.maxs - coeffs.mins
    safe = np.where(span == 0.0, 1.0, span)
    out = (raw - coeffs.mins) / safe
    if np.ndim(out) == 1:
        out[coeffs.degenerate] = 0.0
    else:
        out[:, coeffs.degenerate] = 0.0
    return out


def dump_csv(w1: ReservoirMatrix, path) -> None:
    """Debug dump of the matrix, one CSV row per matrix row."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for row in w1.entries:
            writer.writerow(row.tolist())
