"""MNIST-10 IDX files: parsing, validation, loading, optional download."""

import gzip
import os
import struct
import urllib.request
from dataclasses import dataclass
from pathlib import Path

import numpy as np

IMAGE_MAGIC = 2051
LABEL_MAGIC = 2049
IMAGE_SIDE = 28
PIXELS = IMAGE_SIDE * IMAGE_SIDE

FILE_NAMES = (
    "train-images-idx3-ubyte",
    "train-labels-idx1-ubyte",
    "t10k-images-idx3-ubyte",
    "t10k-labels-idx1-ubyte",
)

DEFAULT_BASE_URL = "https://ossci-datasets.s3.amazonaws.com/mnist/"
MNIST_DIR_ENV = "NNETEN_MNIST_DIR"
MNIST_URL_ENV = "NNETEN_MNIST_URL"


class IdxError(ValueError):
    """Base for IDX parsing problems."""


class WrongMagic(IdxError):
    pass


class DimensionMismatch(IdxError):
    pass


class Truncated(IdxError):
    pass


class LabelOutOfRange(IdxError):
    pass


class MissingFile(FileNotFoundError):
    pass


class ValidationFailed(IdxError):
    pass


class NetworkError(OSError):
    pass


@dataclass(frozen=True)
class MnistDataset:
    train_images: np.ndarray  # (n, 784) uint8
    train_labels: np.ndarray  # (n,) uint8
    test_images: np.ndarray
    test_labels: np.ndarray

    @property
    def train_count(self) -> int:
        return len(self.train_labels)

    @property
    def test_count(self) -> int:
        return len(self.test_labels)


def _maybe_gunzip(buf: bytes) -> bytes:
    if buf[:2] == b"\x1f\x8b":
        return gzip.decompress(buf)
    return buf


def parse_idx_images(buf: bytes) -> np.ndarray:
    """Parse an IDX image file into a (count, 784) uint8 array.

    Trailing bytes beyond the declared count are rejected, as are short files.
    """
    buf = _maybe_gunzip(buf)
    if len(buf) < 4:
        raise Truncated(f"image header needs 16 bytes, got {len(buf)}")
    magic = struct.unpack(">i", buf[:4])[0]
    if magic != IMAGE_MAGIC:
        raise WrongMagic(f"expected magic {IMAGE_MAGIC}, got {magic}")
    if len(buf) < 16:
        raise Truncated(f"image header needs 16 bytes, got {len(buf)}")
    count, rows, cols = struct.unpack(">iii", buf[4:16])
    if rows != IMAGE_SIDE or cols != IMAGE_SIDE:
        raise DimensionMismatch(f"expected 28x28 images, got {rows}x{cols}")
    expected = 16 + count * PIXELS
    if len(buf) != expected:
        raise Truncated(f"expected {expected} bytes for {count} images, got {len(buf)}")
    return np.frombuffer(buf, dtype=np.uint8, offset=16).reshape(count, PIXELS)


def parse_idx_labels(buf: bytes) -> np.ndarray:
    """Parse an IDX label file into a (count,) uint8 array with values 0..9."""
    buf = _maybe_gunzip(buf)
    if len(buf) < 4:
        raise Truncated(f"label header needs 8 bytes, got {len(buf)}")
    magic = struct.unpack(">i", buf[:4])[0]
    if magic != LABEL_MAGIC:
        raise WrongMagic(f"expected magic {LABEL_MAGIC}, got {magic}")
    if len(buf) < 8:
        raise Truncated(f"label header needs 8 bytes, got {len(buf)}")
    count = struct.unpack(">i", buf[4:8])[0]
    expected = 8 + count
    if len(buf) != expected:
        raise Truncated(f"expected {expected} bytes for {count} labels, got {len(buf)}")
    labels = np.frombuffer(buf, dtype=np.uint8, offset=8)
    if labels.size and labels.max() > 9:
        bad = int(np.argmax(labels > 9))
        raise LabelOutOfRange(f"label {labels[bad]} at index {bad}")
    return labels


def images_to_idx(images: np.ndarray) -> bytes:
    """Inverse of parse_idx_images (bit-exact round trip)."""
    header = struct.pack(">iiii", IMAGE_MAGIC, len(images), IMAGE_SIDE, IMAGE_SIDE)
    return header + np.ascontiguousarray(images, dtype=np.uint8).tobytes()


def labels_to_idx(labels: np.ndarray) -> bytes:
    """Inverse of parse_idx_labels."""
    return struct.pack(">ii", LABEL_MAGIC, len(labels)) + bytes(bytearray(labels))


def _read_file(directory: Path, name: str) -> bytes:
    plain = directory / name
    gz = directory / (name + ".gz")
    if plain.exists():
        return plain.read_bytes()
    if gz.exists():
        return gz.read_bytes()
    raise MissingFile(f"{plain} (or .gz) not found")


def load_dataset(directory, train_limit=None, test_limit=None) -> MnistDataset:
    """Load the four standard files, optionally truncating each split to a prefix."""
    directory = Path(directory)
    train_images = parse_idx_images(_read_file(directory, FILE_NAMES[0]))
    train_labels = parse_idx_labels(_read_file(directory, FILE_NAMES[1]))
    test_images = parse_idx_images(_read_file(directory, FILE_NAMES[2]))
    test_labels = parse_idx_labels(_read_file(directory, FILE_NAMES[3]))
    if len(train_images) != len(train_labels):
        raise ValidationFailed("train image/label counts differ")
    if len(test_images) != len(test_labels):
        raise ValidationFailed("test image/label counts differ")
    if train_limit is not None:
        train_images = train_images[:train_limit]
        train_labels = train_labels[:train_limit]
    if test_limit is not None:
        test_images = test_images[:test_limit]
        test_labels = test_labels[:test_limit]
    return MnistDataset(train_images, train_labels, test_images, test_labels)


def default_dir():
    return os.environ.get(MNIST_DIR_ENV)


def fetch_mnist(directory, base_url=None) -> list:
    """Download any missing MNIST files into `directory`, validating each.

    Files already present and valid are left alone (idempotent). Returns the
    four local paths.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    base_url = base_url or os.environ.get(MNIST_URL_ENV) or DEFAULT_BASE_URL
    if not base_url.endswith("/"):
        base_url += "/"
    paths = []
    for name in FILE_NAMES:
        parse = parse_idx_images if "images" in name else parse_idx_labels
        try:
            existing = _read_file(directory, name)
        except MissingFile:
            existing = None
        if existing is not None:
            parse(existing)  # raises if a stale partial download is on disk
            paths.append(directory / name if (directory / name).exists()
                         else directory / (name + ".gz"))
            continue
        url = base_url + name + ".gz"
        try:
            with urllib.request.urlopen(url) as resp:
                data = resp.read()
        except OSError as exc:
            raise NetworkError(f"failed to download {url}: {exc}") from exc
        try:
            parse(data)
        except IdxError as exc:
            raise ValidationFailed(f"{url}: {exc}") from exc
        target = directory / (name + ".gz")
        target.write_bytes(data)
        paths.append(target)
    return paths
