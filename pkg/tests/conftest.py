import gzip
import os
from pathlib import Path

import numpy as np
import pytest

from nneten import mnist_io


def make_synthetic_splits(train_count=600, test_count=100, seed=12345):
    """Deterministic stand-in dataset with the real shapes and label range."""
    rng = np.random.default_rng(seed)
    train_images = rng.integers(0, 256, size=(train_count, mnist_io.PIXELS), dtype=np.uint8)
    train_labels = (np.arange(train_count) % 10).astype(np.uint8)
    test_images = rng.integers(0, 256, size=(test_count, mnist_io.PIXELS), dtype=np.uint8)
    test_labels = (np.arange(test_count) % 10).astype(np.uint8)
    return train_images, train_labels, test_images, test_labels


def write_idx_dir(directory: Path, splits, gzipped=False):
    train_images, train_labels, test_images, test_labels = splits
    blobs = {
        mnist_io.FILE_NAMES[0]: mnist_io.images_to_idx(train_images),
        mnist_io.FILE_NAMES[1]: mnist_io.labels_to_idx(train_labels),
        mnist_io.FILE_NAMES[2]: mnist_io.images_to_idx(test_images),
        mnist_io.FILE_NAMES[3]: mnist_io.labels_to_idx(test_labels),
    }
    directory.mkdir(parents=True, exist_ok=True)
    for name, blob in blobs.items():
        if gzipped:
            (directory / (name + ".gz")).write_bytes(gzip.compress(blob))
        else:
            (directory / name).write_bytes(blob)
    return directory


@pytest.fixture(scope="session")
def synthetic_mnist_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("mnist") / "idx"
    return write_idx_dir(directory, make_synthetic_splits())


@pytest.fixture(scope="session")
def dataset(synthetic_mnist_dir):
    return mnist_io.load_dataset(synthetic_mnist_dir)


def real_mnist_dir():
    """Full MNIST location, if the user provided one; None otherwise."""
    candidate = os.environ.get(mnist_io.MNIST_DIR_ENV)
    if not candidate:
        return None
    try:
        labels = mnist_io.parse_idx_labels(
            mnist_io._read_file(Path(candidate), mnist_io.FILE_NAMES[3]))
    except (mnist_io.MissingFile, mnist_io.IdxError):
        return None
    return candidate if len(labels) == 10_000 else None
