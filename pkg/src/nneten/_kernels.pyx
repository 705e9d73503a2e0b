# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: online backprop epochs and Chebyshev template counting.

The pure-numpy twin lives in ``_kernels_py``; ``nneten._backend`` picks
whichever is available at import time.
"""

import numpy as np

from libc.math cimport exp, fabs

BACKEND = "cython"


def train_epochs(double[:, ::1] w2, double[:, ::1] hidden,
                 long[::1] labels, double lr, int epochs):
    """Run `epochs` passes of online delta-rule updates over the samples, in order.

    w2 is updated in place. Dot products accumulate index-ascending so results
    are bit-reproducible.
    """
    cdef Py_ssize_t n = hidden.shape[0]
    cdef Py_ssize_t n_out = w2.shape[0]
    cdef Py_ssize_t n_in = w2.shape[1]
    cdef Py_ssize_t e, s, k, i
    cdef long lab
    cdef double z, o, g, t
    cdef double[::1] out = np.empty(n_out, dtype=np.float64)

    for e in range(epochs):
        for s in range(n):
            for k in range(n_out):
                z = 0.0
                for i in range(n_in):
                    z += w2[k, i] * hidden[s, i]
                out[k] = 1.0 / (1.0 + exp(-z))
            lab = labels[s]
            for k in range(n_out):
                o = out[k]
                t = 1.0 if k == lab else 0.0
                g = lr * (t - o) * o * (1.0 - o)
                for i in range(n_in):
                    w2[k, i] += g * hidden[s, i]


def template_match_counts(double[::1] x, int m, double tol):
    """Per-template similar-template counts under Chebyshev distance.

    Returns an int64 array c with c[i] = #{j : max_k |x[i+k]-x[j+k]| <= tol,
    0 <= k < m} over the N-m+1 templates, self-match included.
    """
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t t = n - m + 1
    cdef Py_ssize_t i, j, k
    cdef bint match
    counts_arr = np.zeros(t, dtype=np.int64)
    cdef long[::1] counts = counts_arr

    for i in range(t):
        counts[i] += 1
        for j in range(i + 1, t):
            match = True
            for k in range(m):
                if fabs(x[i + k] - x[j + k]) > tol:
                    match = False
                    break
            if match:
                counts[i] += 1
                counts[j] += 1
    return counts_arr


def sample_entropy_counts(double[::1] x, int m, double tol):
    """Pair counts for sample entropy: (b, a).

    b = #{i<j} of m-template Chebyshev matches, a = same for (m+1)-templates,
    both over the first N-m templates (self-matches excluded).
    """
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t t = n - m
    cdef Py_ssize_t i, j, k
    cdef bint match
    cdef long a = 0, b = 0

    for i in range(t):
        for j in range(i + 1, t):
            match = True
            for k in range(m):
                if fabs(x[i + k] - x[j + k]) > tol:
                    match = False
                    break
            if match:
                b += 1
                if fabs(x[i + m] - x[j + m]) <= tol:
                    a += 1
    return b, a
