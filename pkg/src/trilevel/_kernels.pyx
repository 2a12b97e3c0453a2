# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled reduced-density time series (same contract as ``_kernels_py``)."""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()


def density_series(A, B, D, src, omega, times):
    cdef double complex[:, :, ::1] a = np.ascontiguousarray(A, dtype=np.complex128)
    cdef double complex[:, :, ::1] b = np.ascontiguousarray(B, dtype=np.complex128)
    cdef double complex[:, :, ::1] d = np.ascontiguousarray(D, dtype=np.complex128)
    cdef cnp.int64_t[:, :, ::1] ix = np.ascontiguousarray(src, dtype=np.int64)
    cdef double[:, ::1] om = np.ascontiguousarray(omega, dtype=np.float64)
    cdef double[::1] tt = np.ascontiguousarray(times, dtype=np.float64)
    cdef Py_ssize_t S = a.shape[1], P = a.shape[2], Q = om.shape[1], T = tt.shape[0]
    cdef Py_ssize_t k, p, q, i, j, s, col
    cdef double t, ph, cr[3], ci[3], accr[3][3], acci[3][3]
    cdef double complex term
    cdef double[:, ::1] cs = np.empty((S, Q))
    cdef double[:, ::1] sn = np.empty((S, Q))
    out = np.empty((T, 3, 3), dtype=np.complex128)
    cdef double complex[:, :, ::1] res = out

    for k in range(T):
        t = tt[k]
        for s in range(S):
            for q in range(Q):
                ph = om[s, q] * t
                cs[s, q] = cos(ph)
                sn[s, q] = sin(ph)
        for i in range(3):
            for j in range(3):
                accr[i][j] = 0.0
                acci[i][j] = 0.0
        for p in range(P):
            for i in range(3):
                cr[i] = 0.0
                ci[i] = 0.0
                for s in range(S):
                    col = ix[i, s, p]
                    term = a[i, s, p] + b[i, s, p] * cs[s, col] + d[i, s, p] * sn[s, col]
                    cr[i] += term.real
                    ci[i] += term.imag
            for i in range(3):
                for j in range(i, 3):
                    accr[i][j] += cr[i] * cr[j] + ci[i] * ci[j]
                    acci[i][j] += ci[i] * cr[j] - cr[i] * ci[j]
        for i in range(3):
            for j in range(i, 3):
                res[k, i, j] = accr[i][j] + 1j * acci[i][j]
                res[k, j, i] = accr[i][j] - 1j * acci[i][j]
    return out
