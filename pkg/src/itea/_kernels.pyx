# cython: boundscheck=False, wraparound=False, nonecheck=False, cdivision=True
"""Compiled population kernels; see ``itea._fallback`` for the reference."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.uint8_t u8


def onemax_offspring(const u8[::1] center, i64 f_center,
                     const i64[::1] indptr, const i64[::1] indices):
    cdef Py_ssize_t lam = indptr.shape[0] - 1
    cdef Py_ssize_t k, j
    cdef i64 f
    out = np.empty(lam, dtype=np.int64)
    cdef i64[::1] res = out
    for k in range(lam):
        f = f_center
        for j in range(indptr[k], indptr[k + 1]):
            f += 1 - 2 * <i64>center[indices[j]]
        res[k] = f
    return out


def leadingones_offspring(const u8[::1] center,
                          const i64[::1] indptr, const i64[::1] indices):
    cdef Py_ssize_t lam = indptr.shape[0] - 1
    cdef Py_ssize_t n = center.shape[0]
    cdef Py_ssize_t k, i, ptr, end, first, lead = 0
    cdef u8 bit
    out = np.empty(lam, dtype=np.int64)
    cdef i64[::1] res = out
    while lead < n and center[lead] == 1:
        lead += 1
    for k in range(lam):
        ptr = indptr[k]
        end = indptr[k + 1]
        # only the first flip matters unless it hits the center's first zero
        if ptr == end or indices[ptr] > lead:
            res[k] = lead
            continue
        first = indices[ptr]
        if first < lead:
            res[k] = first
            continue
        i = lead + 1
        ptr += 1
        while i < n:
            bit = center[i]
            if ptr < end and indices[ptr] == i:
                bit ^= 1
                ptr += 1
            if bit == 0:
                break
            i += 1
        res[k] = i
    return out


def materialize(const u8[::1] center, const i64[::1] indptr,
                const i64[::1] indices, rows):
    cdef i64[::1] r = np.ascontiguousarray(rows, dtype=np.int64)
    cdef Py_ssize_t m = r.shape[0]
    cdef Py_ssize_t n = center.shape[0]
    cdef Py_ssize_t j, t
    out = np.empty((m, n), dtype=np.uint8)
    cdef u8[:, ::1] x = out
    for j in range(m):
        x[j, :] = center
        for t in range(indptr[r[j]], indptr[r[j] + 1]):
            x[j, indices[t]] ^= 1
    return out


def row_flip_counts(const i64[::1] indptr, const i64[::1] indices, rows, Py_ssize_t n):
    cdef i64[::1] r = np.ascontiguousarray(rows, dtype=np.int64)
    cdef Py_ssize_t m = r.shape[0]
    cdef Py_ssize_t j, t
    out = np.zeros(n, dtype=np.int64)
    cdef i64[::1] counts = out
    for j in range(m):
        for t in range(indptr[r[j]], indptr[r[j] + 1]):
            counts[indices[t]] += 1
    return out
