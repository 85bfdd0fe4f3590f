"""Pure-numpy kernels: the reference backend.

Semantically identical to the compiled kernels in ``_kernels.pyx``; the two
backends consume identical normal draws (generated upstream) and agree to
roundoff, but floating-point summation order differs (BLAS / pairwise here,
sequential compensated there), so results are deterministic per backend,
not bit-identical across backends.
"""

from __future__ import annotations

import numpy as np


def staircase_expand(draws: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Scatter concatenated per-component draws into staircase matrices.

    Parameters
    ----------
    draws : (m, n_obs) ndarray
        Sample m's observed entries, concatenated row-major: entries of
        component i occupy ``draws[m, offsets[i]:offsets[i+1]]`` and land
        in columns 0..counts[i]-1 of row i.
    counts : (r,) int ndarray
        Observation counts per component, positive and non-decreasing.

    Returns
    -------
    (m, r, s_max) ndarray
        Matrices with zeros exactly at the structurally missing positions
        (column j of row i is zero iff j >= counts[i]).
    """
    draws = np.asarray(draws, dtype=np.float64)
    counts = np.asarray(counts, dtype=np.int64)
    m = draws.shape[0]
    r = counts.size
    s_max = int(counts[-1])
    rows = np.repeat(np.arange(r), counts)
    cols = np.concatenate([np.arange(c) for c in counts])
    u = np.zeros((m, r, s_max))
    u[:, rows, cols] = draws
    return u


def staircase_gram(draws: np.ndarray, counts: np.ndarray) -> np.ndarray:
    """Gram matrices X = U U^T of staircase matrices built from ``draws``.

    Returns a (m, r, r) stack of symmetric positive semidefinite matrices.
    """
    u = staircase_expand(draws, counts)
    return np.matmul(u, u.transpose(0, 2, 1))


def colored_gram(z: np.ndarray, chol: np.ndarray) -> np.ndarray:
    """Gram matrices of colored Gaussian matrices.

    Parameters
    ----------
    z : (m, r, n_cols) ndarray
        Standard normal draws, one matrix per sample.
    chol : (r, r) ndarray
        Lower Cholesky factor of the column covariance.

    Returns
    -------
    (m, r, r) ndarray
        X = (chol z)(chol z)^T per sample.
    """
    z = np.asarray(z, dtype=np.float64)
    chol = np.asarray(chol, dtype=np.float64)
    u = np.matmul(chol, z)
    return np.matmul(u, u.transpose(0, 2, 1))


def exp_trace_stats(xs: np.ndarray, thetas: np.ndarray):
    """Accumulate exp-trace statistics of a chunk against each theta.

    Parameters
    ----------
    xs : (m, r, r) ndarray
        Chunk of symmetric matrices.
    thetas : (t, r, r) ndarray
        Stack of symmetric transform arguments.

    Returns
    -------
    (w_sum, w2_sum, tr_max, tr_argmax)
        Per-theta sums of w = exp(tr(theta X)) and w^2, and the maximum
        trace with its 0-based chunk-local sample index (for overflow
        diagnostics). Sums use numpy's pairwise reduction: deterministic
        for a fixed chunk.
    """
    xs = np.asarray(xs, dtype=np.float64)
    thetas = np.asarray(thetas, dtype=np.float64)
    tr = np.einsum("mij,tij->mt", xs, thetas)
    tr_argmax = tr.argmax(axis=0)
    tr_max = tr[tr_argmax, np.arange(thetas.shape[0])]
    with np.errstate(over="ignore"):
        w = np.exp(tr)
        w_sum = w.sum(axis=0)
        w2_sum = (w * w).sum(axis=0)
    return w_sum, w2_sum, tr_max, tr_argmax.astype(np.int64)
