"""Pure numpy implementations of the population kernels.

Same signatures and results as the compiled ``itea._kernels``.
Masks are passed in CSR form ``(indptr, indices)`` with sorted rows.
"""

import numpy as np


def _row_ids(indptr):
    return np.repeat(np.arange(indptr.size - 1), np.diff(indptr))


def onemax_offspring(center, f_center, indptr, indices):
    lam = indptr.size - 1
    delta = 1 - 2 * center[indices].astype(np.int64)
    sums = np.bincount(_row_ids(indptr), weights=delta, minlength=lam)
    return sums.astype(np.int64) + f_center


def leadingones_offspring(center, indptr, indices):
    lam = indptr.size - 1
    n = center.size
    x = np.tile(center, (lam, 1))
    x[_row_ids(indptr), indices] ^= 1
    return np.where(x.all(axis=1), n, x.argmin(axis=1)).astype(np.int64)


def materialize(center, indptr, indices, rows):
    rows = np.asarray(rows, dtype=np.int64)
    x = np.tile(center, (rows.size, 1))
    for j, k in enumerate(rows.tolist()):
        x[j, indices[indptr[k]:indptr[k + 1]]] ^= 1
    return x


def row_flip_counts(indptr, indices, rows, n):
    lam = indptr.size - 1
    selected = np.zeros(lam, dtype=bool)
    selected[np.asarray(rows, dtype=np.int64)] = True
    return np.bincount(indices[selected[_row_ids(indptr)]], minlength=n).astype(np.int64)
