# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels; mirrors mabody.kernels._fallback exactly."""

import itertools

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs

BACKEND = "cython"


cdef int _solve_small(double* M, double* rhs, double* out, int k) nogil:
    """Solve the k x k system M out = rhs (row-major) by Gaussian elimination
    with partial pivoting; returns 0 on (near-)singularity."""
    cdef int i, j, p, piv
    cdef double big, tmp, f
    for i in range(k):
        piv = i
        big = fabs(M[i * k + i])
        for p in range(i + 1, k):
            if fabs(M[p * k + i]) > big:
                big = fabs(M[p * k + i])
                piv = p
        if big < 1e-12:
            return 0
        if piv != i:
            for j in range(k):
                tmp = M[i * k + j]
                M[i * k + j] = M[piv * k + j]
                M[piv * k + j] = tmp
            tmp = rhs[i]
            rhs[i] = rhs[piv]
            rhs[piv] = tmp
        for p in range(i + 1, k):
            f = M[p * k + i] / M[i * k + i]
            for j in range(i, k):
                M[p * k + j] -= f * M[i * k + j]
            rhs[p] -= f * rhs[i]
    for i in range(k - 1, -1, -1):
        tmp = rhs[i]
        for j in range(i + 1, k):
            tmp -= M[i * k + j] * out[j]
        out[i] = tmp / M[i * k + i]
    return 1


def polytope_bstar_enum(normals, cvals, Y, double ftol):
    """See mabody.kernels._fallback.polytope_bstar_enum for the contract."""
    cdef const double[:, ::1] N = np.ascontiguousarray(normals, dtype=np.float64)
    cdef const double[::1] c = np.ascontiguousarray(cvals, dtype=np.float64)
    cdef const double[:, ::1] YY = np.ascontiguousarray(np.atleast_2d(Y), dtype=np.float64)
    cdef int m = N.shape[0]
    cdef int n = N.shape[1]
    cdef int d = YY.shape[0]
    cdef int k = n + 1

    subsets_np = np.array(list(itertools.combinations(range(m), k)), dtype=np.intp)
    cdef cnp.intp_t[:, ::1] subsets = subsets_np
    cdef int nsub = subsets.shape[0]

    t_np = np.full(d, -1.0)
    a_np = np.zeros((d, n))
    cdef double[::1] t_out = t_np
    cdef double[:, ::1] a_out = a_np

    cdef double[::1] q = np.zeros(m)
    cdef double M[16]
    cdef double rhs[4]
    cdef double sol[4]
    cdef int j, s, i, ii, jj, row
    cdef double beta, best_t, lhs, tc
    cdef int feas, okflag

    for j in range(d):
        for i in range(m):
            beta = 0.0
            for jj in range(n):
                beta += YY[j, jj] * N[i, jj]
            q[i] = beta * beta / (2.0 * c[i])
        best_t = -1.0
        for s in range(nsub):
            for ii in range(k):
                row = subsets[s, ii]
                for jj in range(n):
                    M[ii * k + jj] = N[row, jj]
                M[ii * k + n] = -q[row]
                rhs[ii] = -c[row] / 2.0
            okflag = _solve_small(M, rhs, sol, k)
            if okflag == 0:
                continue
            tc = sol[n]
            if tc < -ftol or tc <= best_t:
                continue
            feas = 1
            for i in range(m):
                lhs = -q[i] * tc
                for jj in range(n):
                    lhs += sol[jj] * N[i, jj]
                if lhs < -c[i] / 2.0 - ftol:
                    feas = 0
                    break
            if feas:
                best_t = tc
                for jj in range(n):
                    a_out[j, jj] = sol[jj]
        t_out[j] = best_t

    return t_np, a_np


def polytope_gauge_max(normals, slack, P):
    """max over rows p (relative to the anchor) of max_i n_i.p / slack_i."""
    cdef const double[:, ::1] N = np.ascontiguousarray(normals, dtype=np.float64)
    cdef const double[::1] s = np.ascontiguousarray(slack, dtype=np.float64)
    cdef const double[:, ::1] PP = np.ascontiguousarray(np.atleast_2d(P), dtype=np.float64)
    cdef int m = N.shape[0]
    cdef int n = N.shape[1]
    cdef int npts = PP.shape[0]
    cdef int i, jj, p
    cdef double g, dot, best = -1e300
    for p in range(npts):
        for i in range(m):
            dot = 0.0
            for jj in range(n):
                dot += N[i, jj] * PP[p, jj]
            g = dot / s[i]
            if g > best:
                best = g
    return best
