"""Trainable output stage: 26 -> 10 single layer, sigmoid outputs, online
delta-rule updates in dataset order."""

import numpy as np

from . import _backend

N_CLASSES = 10
N_INPUTS = 26  # 25 normalized hidden activations + constant bias
LEARNING_RATE = 0.2
INITIAL_WEIGHT = 0.5


def init_weights() -> np.ndarray:
    """All 10 x 26 weights start at exactly 0.5 so runs are repeatable."""
    return np.full((N_CLASSES, N_INPUTS), INITIAL_WEIGHT)


def add_bias(hidden: np.ndarray) -> np.ndarray:
    """Append the constant 1.0 input to a (n, 25) batch of hidden vectors."""
    hidden = np.atleast_2d(hidden)
    return np.hstack([hidden, np.ones((hidden.shape[0], 1))])


def sigmoid(z):
    return 1.0 / (1.0 + np.exp(-z))


def forward(w2: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Output vector for one 26-component input."""
    return sigmoid(w2 @ s)


def train_epochs(w2, hidden, labels, lr=LEARNING_RATE, epochs=1) -> np.ndarray:
    """Train in place for `epochs` full passes, sequential over samples.

    Per sample: o = sigmoid(w2 @ s), one-hot target t, and
    w2[k, i] += lr * (t_k - o_k) * o_k * (1 - o_k) * s_i applied immediately.
    Returns w2 for convenience.
    """
    if epochs < 0:
        raise ValueError("epochs must be >= 0")
    w2 = np.ascontiguousarray(w2, dtype=np.float64)
    hidden = np.ascontiguousarray(hidden, dtype=np.float64)
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    _backend.train_epochs(w2, hidden, labels, float(lr), int(epochs))
    return w2


def evaluate(w2, hidden, labels) -> float:
    """Fraction of samples whose argmax output matches the label.

    Sigmoid is monotone, so the argmax is taken over pre-activations; ties
    resolve to the lowest class index.
    """
    if len(labels) == 0:
        raise ValueError("test split is empty")
    scores = np.asarray(hidden) @ np.asarray(w2).T
    predictions = scores.argmax(axis=1)
    return float(np.mean(predictions == np.asarray(labels)))


def dump_weights_csv(w2: np.ndarray, path) -> None:
    """Debug snapshot, one CSV row per output neuron."""
    np.savetxt(path, np.asarray(w2), delimiter=",")
