# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: per-degree pair sums and Clenshaw series evaluation.

Contracts match ``_kernels_py``; results may differ from the fallback only by
floating-point reassociation.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def pair_series_sums(double[::1] t, double[::1] wt, double[::1] a,
                     double[::1] b, int L):
    cdef Py_ssize_t n = t.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.zeros(L + 1)
    cdef double[::1] ov = out
    cdef cnp.ndarray[double, ndim=1] p0a = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] p1a = np.empty(n)
    cdef double[::1] p0 = p0a
    cdef double[::1] p1 = p1a
    cdef Py_ssize_t k
    cdef int ell
    cdef double s0 = 0.0, s1 = 0.0, s, al, bl, pn
    for k in range(n):
        p0[k] = 1.0
        p1[k] = t[k]
        s0 += wt[k]
        s1 += wt[k] * t[k]
    ov[0] = s0
    if L >= 1:
        ov[1] = s1
    for ell in range(2, L + 1):
        al = a[ell]
        bl = b[ell]
        s = 0.0
        for k in range(n):
            pn = al * t[k] * p1[k] + bl * p0[k]
            p0[k] = p1[k]
            p1[k] = pn
            s += wt[k] * pn
        ov[ell] = s
    return out


def clenshaw_vals(double[::1] t, double[::1] c, double[::1] a, double[::1] b):
    cdef Py_ssize_t n = t.shape[0]
    cdef int L = c.shape[0] - 1
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n)
    cdef double[::1] ov = out
    cdef Py_ssize_t k
    cdef int ell
    cdef double u1, u2, u, tk
    for k in range(n):
        tk = t[k]
        u1 = 0.0
        u2 = 0.0
        for ell in range(L, 0, -1):
            u = c[ell] + a[ell + 1] * tk * u1 + b[ell + 2] * u2
            u2 = u1
            u1 = u
        ov[k] = c[0] + b[2] * u2 + tk * u1
    return out


def clenshaw_weighted_sum(double[::1] t, double[::1] wt, double[::1] c,
                          double[::1] a, double[::1] b):
    cdef Py_ssize_t n = t.shape[0]
    cdef int L = c.shape[0] - 1
    cdef Py_ssize_t k
    cdef int ell
    cdef double u1, u2, u, tk, total = 0.0
    for k in range(n):
        tk = t[k]
        u1 = 0.0
        u2 = 0.0
        for ell in range(L, 0, -1):
            u = c[ell] + a[ell + 1] * tk * u1 + b[ell + 2] * u2
            u2 = u1
            u1 = u
        total += wt[k] * (c[0] + b[2] * u2 + tk * u1)
    return total
