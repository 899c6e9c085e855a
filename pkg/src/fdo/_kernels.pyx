# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: per-dimension pace rule, move + clamp, builtin objectives.

Must stay numerically identical to ``_kernels_py`` for the pace and move
routines (same operation order, no fused multiply-add).
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, exp, sqrt, M_PI

cnp.import_array()

DEF SCALED_RANDOM = 0
DEF TOWARD_BEST = 1
DEF AWAY_FROM_BEST = 2


def pace_vector(const double[::1] x, const double[::1] xstar, double fw, const double[::1] r, double fitness):
    cdef Py_ssize_t n = x.shape[0], d
    pace = np.empty(n, dtype=np.float64)
    branch = np.empty(n, dtype=np.int8)
    cdef double[::1] p = pace
    cdef signed char[::1] b = branch
    cdef bint special = fw <= 0.0 or fw >= 1.0 or fitness == 0.0
    for d in range(n):
        if special:
            p[d] = x[d] * r[d]
            b[d] = SCALED_RANDOM
        elif r[d] < 0.0:
            p[d] = (x[d] - xstar[d]) * fw * -1.0
            b[d] = TOWARD_BEST
        else:
            p[d] = (x[d] - xstar[d]) * fw
            b[d] = AWAY_FROM_BEST
    return pace, branch


def move(const double[::1] x, const double[::1] pace, const double[::1] lower, const double[::1] upper, bint clamp):
    cdef Py_ssize_t n = x.shape[0], d
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double v
    for d in range(n):
        v = x[d] + pace[d]
        if clamp:
            if v < lower[d]:
                v = lower[d]
            elif v > upper[d]:
                v = upper[d]
        o[d] = v
    return out


def sphere(const double[::1] x):
    cdef Py_ssize_t d
    cdef double s = 0.0
    for d in range(x.shape[0]):
        s += x[d] * x[d]
    return s


def rastrigin(const double[::1] x):
    cdef Py_ssize_t d, n = x.shape[0]
    cdef double s = 10.0 * n
    for d in range(n):
        s += x[d] * x[d] - 10.0 * cos(2.0 * M_PI * x[d])
    return s


def rosenbrock(const double[::1] x):
    cdef Py_ssize_t d
    cdef double s = 0.0, a, b
    for d in range(x.shape[0] - 1):
        a = x[d + 1] - x[d] * x[d]
        b = 1.0 - x[d]
        s += 100.0 * a * a + b * b
    return s


def ackley(const double[::1] x):
    cdef Py_ssize_t d, n = x.shape[0]
    cdef double sq = 0.0, cs = 0.0
    for d in range(n):
        sq += x[d] * x[d]
        cs += cos(2.0 * M_PI * x[d])
    return -20.0 * exp(-0.2 * sqrt(sq / n)) - exp(cs / n) + 20.0 + exp(1.0)
