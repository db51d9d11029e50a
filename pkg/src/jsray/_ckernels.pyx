# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the loops in ``_pykernels``; same signatures and results."""
import numpy as np
from libc.math cimport fabs, INFINITY


def shift_profile(d, s):
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=float)
    cdef double[::1] sv = np.ascontiguousarray(s, dtype=float)
    out = np.empty(sv.shape[0])
    cdef double[::1] ov = out
    cdef Py_ssize_t i, j, k = dv.shape[0]
    cdef double best, v
    for i in range(sv.shape[0]):
        best = 0.0
        for j in range(k):
            v = fabs(dv[j] + 2.0 * sv[i])
            if v > best:
                best = v
        ov[i] = 0.5 * best
    return out


def scan_min(d, double lo, double step, Py_ssize_t n):
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=float)
    cdef Py_ssize_t i, j, k = dv.shape[0], arg = 0
    cdef double s, v, cur, fbest = INFINITY
    for i in range(n):
        s = lo + step * <double>i
        cur = 0.0
        for j in range(k):
            v = fabs(dv[j] + 2.0 * s)
            if v > cur:
                cur = v
        cur = 0.5 * cur
        if cur < fbest:
            fbest = cur
            arg = i
    return int(arg), float(fbest)


def ratio_max(m, mp, x):
    cdef double[::1] mv = np.ascontiguousarray(m, dtype=float)
    cdef double[::1] mpv = np.ascontiguousarray(mp, dtype=float)
    cdef double[:, ::1] xv = np.ascontiguousarray(x, dtype=float)
    cdef Py_ssize_t i, j, n = xv.shape[0], k = xv.shape[1]
    cdef double num, den, w, r, top = -INFINITY, best = -INFINITY
    gap_arr = np.empty(k)
    cdef double[::1] gap = gap_arr
    for j in range(k):
        r = mpv[j] / mv[j]
        gap[j] = r
        if r > top:
            top = r
    for j in range(k):
        gap[j] = top - gap[j]
    for i in range(n):
        num = 0.0
        den = 0.0
        for j in range(k):
            w = mv[j] * (xv[i, j] * xv[i, j])
            num = num + w * gap[j]
            den = den + w
        if den > 0.0:
            r = top - num / den
            if r > best:
                best = r
    return float(best)
