"""Classical entropy estimators used for comparison: approximate entropy,
sample entropy, and normalized permutation entropy."""

import math
import warnings

import numpy as np

from . import _backend


class TooShort(ValueError):
    pass


class ZeroVarianceWarning(UserWarning):
    """Constant series: tolerance would be zero; the estimator returns 0."""


def _tolerance(values: np.ndarray, rr: float, mode: str) -> float:
    """Match tolerance: rr times the population SD, or rr itself.

    "sd" is the common convention and keeps the estimator amplitude-invariant;
    "absolute" is what reproduces the reference comparison table (see README).
    """
    if values.max() == values.min():
        return 0.0  # constant series, flagged by the caller
    if mode == "sd":
        return rr * float(np.std(values))
    if mode == "absolute":
        return float(rr)
    raise ValueError(f"unknown tolerance mode {mode!r}")


def ap_en(values, m: int = 2, rr: float = 0.025, tolerance_mode: str = "sd") -> float:
    """Approximate entropy: Phi(m) - Phi(m+1), Chebyshev distance,
    self-matches included."""
    x = np.ascontiguousarray(values, dtype=np.float64)
    n = x.shape[0]
    if m < 1 or rr <= 0:
        raise ValueError("need m >= 1 and rr > 0")
    if n < m + 2:
        raise TooShort(f"need more than m+1={m + 1} samples, got {n}")
    tol = _tolerance(x, rr, tolerance_mode)
    if tol == 0.0:
        warnings.warn("zero-variance series, returning 0", ZeroVarianceWarning)
        return 0.0

    def phi(mm: int) -> float:
        counts = _backend.template_match_counts(x, mm, tol)
        return float(np.mean(np.log(counts / counts.shape[0])))

    return phi(m) - phi(m + 1)


def samp_en(values, m: int = 2, rr: float = 0.2, tolerance_mode: str = "sd") -> float:
    """Sample entropy: -ln(A/B) with self-matches excluded; returns inf when
    no matches exist at either template length."""
    x = np.ascontiguousarray(values, dtype=np.float64)
    n = x.shape[0]
    if m < 1 or rr <= 0:
        raise ValueError("need m >= 1 and rr > 0")
    if n < m + 2:
        raise TooShort(f"need more than m+1={m + 1} samples, got {n}")
    tol = _tolerance(x, rr, tolerance_mode)
    if tol == 0.0:
        warnings.warn("zero-variance series, returning 0", ZeroVarianceWarning)
        return 0.0
    b, a = _backend.sample_entropy_counts(x, m, tol)
    if b == 0 or a == 0:
        return math.inf
    return -math.log(a / b)


def perm_en(values, m: int = 2, d: int = 1) -> float:
    """Permutation entropy of ordinal patterns, normalized by ln(m!) to [0, 1].

    Amplitude ties break toward the earlier index.
    """
    x = np.asarray(values, dtype=np.float64)
    n = x.shape[0]
    if m < 2 or d < 1:
        raise ValueError("need m >= 2 and d >= 1")
    count = n - (m - 1) * d
    if count < 1:
        raise TooShort(f"need more than (m-1)*d={(m - 1) * d} samples, got {n}")
    idx = np.arange(count)[:, None] + d * np.arange(m)[None, :]
    windows = x[idx]
    # stable argsort: equal values keep index order, i.e. earlier index ranks lower
    patterns = np.argsort(windows, axis=1, kind="stable")
    codes = np.zeros(count, dtype=np.int64)
    for k in range(m):
        codes = codes * m + patterns[:, k]
    _, freq = np.unique(codes, return_counts=True)
    p = freq / count
    entropy = -float(np.sum(p * np.log(p)))
    return entropy / math.log(math.factorial(m))
