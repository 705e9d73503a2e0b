"""Neural-network entropy (NNetEn) of time series.

A fixed 25x785 reservoir is filled with the series, a single trainable layer
learns MNIST digits from the mixed activations, and test accuracy (as a
fraction) is the entropy. Classical estimators (ApEn, SampEn, PerEn) and
sweep tooling for figure reproduction are included.
"""

from ._backend import BACKEND
from .baselines import ap_en, perm_en, samp_en
from .entropy import (DEFAULT_EPOCHS, SERIES_LENGTH, EntropyReport, InertiaReport,
                      PipelineConfig, SweepResult, epoch_sweep, learning_inertia,
                      length_sweep, nnet_en, r_sweep)
from .mnist_io import MnistDataset, fetch_mnist, load_dataset
from .reservoir import ReservoirMatrix, fill_matrix
from .series_gen import MapParams, TimeSeries, default_params, generate, read_series, write_series

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "DEFAULT_EPOCHS", "SERIES_LENGTH", "EntropyReport", "InertiaReport",
    "MapParams", "MnistDataset", "PipelineConfig", "ReservoirMatrix", "SweepResult",
    "TimeSeries", "ap_en", "default_params", "epoch_sweep", "fetch_mnist",
    "fill_matrix", "generate", "learning_inertia", "length_sweep", "load_dataset",
    "nnet_en", "perm_en", "r_sweep", "read_series", "samp_en", "write_series",
]
