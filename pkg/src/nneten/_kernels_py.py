"""Pure-numpy twin of the compiled kernels in ``_kernels.pyx``.

Same signatures, same results (template counts are exactly equal; trained
weights agree to floating-point accumulation order).
"""

import numpy as np

BACKEND = "numpy"

_CHUNK = 256


def train_epochs(w2, hidden, labels, lr, epochs):
    """Online delta-rule training, sequential over samples; w2 updated in place."""
    n = hidden.shape[0]
    for _ in range(epochs):
        for s in range(n):
            h = hidden[s]
            o = 1.0 / (1.0 + np.exp(-(w2 @ h)))
            t = np.zeros(w2.shape[0])
            t[labels[s]] = 1.0
            g = lr * (t - o) * o * (1.0 - o)
            w2 += np.outer(g, h)


def _templates(x, m):
    t = x.shape[0] - m + 1
    return np.lib.stride_tricks.sliding_window_view(x, m)[:t]


def template_match_counts(x, m, tol):
    """Per-template similar-template counts (Chebyshev, self-match included)."""
    x = np.asarray(x, dtype=np.float64)
    tpl = _templates(x, m)
    t = tpl.shape[0]
    counts = np.zeros(t, dtype=np.int64)
    for lo in range(0, t, _CHUNK):
        hi = min(lo + _CHUNK, t)
        d = np.abs(tpl[lo:hi, None, :] - tpl[None, :, :]).max(axis=2)
        counts[lo:hi] = (d <= tol).sum(axis=1)
    return counts


def sample_entropy_counts(x, m, tol):
    """(b, a) pair counts for sample entropy, self-matches excluded."""
    x = np.asarray(x, dtype=np.float64)
    t = x.shape[0] - m
    tpl_m = _templates(x, m)[:t]
    nxt = x[m:m + t]
    b = 0
    a = 0
    for lo in range(0, t, _CHUNK):
        hi = min(lo + _CHUNK, t)
        d = np.abs(tpl_m[lo:hi, None, :] - tpl_m[None, :, :]).max(axis=2)
        match_m = d <= tol
        # keep strictly-upper-triangular pairs only
        cols = np.arange(t)[None, :]
        rows = np.arange(lo, hi)[:, None]
        upper = cols > rows
        match_m &= upper
        b += int(match_m.sum())
        match_m1 = match_m & (np.abs(nxt[lo:hi, None] - nxt[None, :]) <= tol)
        a += int(match_m1.sum())
    return b, a
