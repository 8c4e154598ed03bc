# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice point enumeration (int64 twin of pure.py).

The caller (geometry module) guarantees all intermediate products fit in
int64 and falls back to the pure kernel otherwise, so the arithmetic here
is exact.
"""

import numpy as np

from ..errors import ResourceCapError

cimport cython
from libc.stdint cimport int64_t


cdef inline int64_t c_floordiv(int64_t a, int64_t c) nogil:
    cdef int64_t q = a / c
    if a % c != 0 and ((a < 0) != (c < 0)):
        q -= 1
    return q


cdef inline int64_t c_ceildiv(int64_t a, int64_t c) nogil:
    cdef int64_t q = a / c
    if a % c != 0 and ((a < 0) == (c < 0)):
        q += 1
    return q


def enum_points(object A_in, object b_in, object lo_in, object hi_in, object budget_in):
    cdef long long[:, ::1] A = np.ascontiguousarray(A_in, dtype=np.int64)
    cdef long long[::1] b = np.ascontiguousarray(b_in, dtype=np.int64)
    cdef long long[::1] lo = np.ascontiguousarray(lo_in, dtype=np.int64)
    cdef long long[::1] hi = np.ascontiguousarray(hi_in, dtype=np.int64)
    cdef Py_ssize_t m = A.shape[0]
    cdef Py_ssize_t dim = lo.shape[0]
    cdef int64_t budget = budget_in
    cdef Py_ssize_t i, j, k
    cdef int64_t a, cap, v

    if dim == 0:
        for i in range(m):
            if b[i] < 0:
                return np.empty((0, 0), dtype=np.int64)
        return np.zeros((1, 0), dtype=np.int64)

    # infeasible all-zero rows
    for i in range(m):
        a = 0
        for j in range(dim):
            if A[i, j] != 0:
                a = 1
                break
        if a == 0 and b[i] < 0:
            return np.empty((0, dim), dtype=np.int64)

    minrest_arr = np.zeros((dim + 1, m), dtype=np.int64)
    cdef long long[:, ::1] minrest = minrest_arr
    cdef int64_t contrib
    for j in range(dim - 1, -1, -1):
        for i in range(m):
            a = A[i, j]
            contrib = a * lo[j]
            if a * hi[j] < contrib:
                contrib = a * hi[j]
            minrest[j, i] = minrest[j + 1, i] + contrib

    psum_arr = np.zeros((dim + 1, m), dtype=np.int64)
    cdef long long[:, ::1] psum = psum_arr
    xs_arr = np.zeros(dim, dtype=np.int64)
    cdef long long[::1] xs = xs_arr
    curhi_arr = np.zeros(dim, dtype=np.int64)
    cdef long long[::1] curhi = curhi_arr

    cdef Py_ssize_t cap_rows = 1024
    out_arr = np.empty((cap_rows, dim), dtype=np.int64)
    cdef long long[:, ::1] out = out_arr
    cdef Py_ssize_t count = 0

    cdef int64_t lo_j, hi_j
    j = 0
    # compute bounds for level 0
    lo_j = lo[0]
    hi_j = hi[0]
    for i in range(m):
        a = A[i, 0]
        if a == 0:
            continue
        cap = b[i] - psum[0, i] - minrest[1, i]
        if a > 0:
            v = c_floordiv(cap, a)
            if v < hi_j:
                hi_j = v
        else:
            v = c_ceildiv(cap, a)
            if v > lo_j:
                lo_j = v
    curhi[0] = hi_j
    xs[0] = lo_j - 1

    while j >= 0:
        xs[j] += 1
        if xs[j] > curhi[j]:
            j -= 1
            continue
        if j == dim - 1:
            if count >= budget:
                raise ResourceCapError(f"lattice point budget {budget} exceeded")
            if count == cap_rows:
                cap_rows = cap_rows * 2
                new_arr = np.empty((cap_rows, dim), dtype=np.int64)
                new_arr[:count] = out_arr[:count]
                out_arr = new_arr
                out = out_arr
            for k in range(dim):
                out[count, k] = xs[k]
            count += 1
            continue
        # push partial sums and descend
        v = xs[j]
        for i in range(m):
            psum[j + 1, i] = psum[j, i] + A[i, j] * v
        j += 1
        lo_j = lo[j]
        hi_j = hi[j]
        for i in range(m):
            a = A[i, j]
            if a == 0:
                continue
            cap = b[i] - psum[j, i] - minrest[j + 1, i]
            if a > 0:
                v = c_floordiv(cap, a)
                if v < hi_j:
                    hi_j = v
            else:
                v = c_ceildiv(cap, a)
                if v > lo_j:
                    lo_j = v
        curhi[j] = hi_j
        xs[j] = lo_j - 1

    return out_arr[:count].copy()


def exists_point(object A_in, object b_in, object lo_in, object hi_in):
    cdef long long[:, ::1] A = np.ascontiguousarray(A_in, dtype=np.int64)
    cdef long long[::1] b = np.ascontiguousarray(b_in, dtype=np.int64)
    cdef long long[::1] lo = np.ascontiguousarray(lo_in, dtype=np.int64)
    cdef long long[::1] hi = np.ascontiguousarray(hi_in, dtype=np.int64)
    cdef Py_ssize_t m = A.shape[0]
    cdef Py_ssize_t dim = lo.shape[0]
    cdef Py_ssize_t i, j
    cdef int64_t a, cap, v

    if dim == 0:
        for i in range(m):
            if b[i] < 0:
                return False
        return True
    for i in range(m):
        a = 0
        for j in range(dim):
            if A[i, j] != 0:
                a = 1
                break
        if a == 0 and b[i] < 0:
            return False

    minrest_arr = np.zeros((dim + 1, m), dtype=np.int64)
    cdef long long[:, ::1] minrest = minrest_arr
    cdef int64_t contrib
    for j in range(dim - 1, -1, -1):
        for i in range(m):
            a = A[i, j]
            contrib = a * lo[j]
            if a * hi[j] < contrib:
                contrib = a * hi[j]
            minrest[j, i] = minrest[j + 1, i] + contrib

    psum_arr = np.zeros((dim + 1, m), dtype=np.int64)
    cdef long long[:, ::1] psum = psum_arr
    xs_arr = np.zeros(dim, dtype=np.int64)
    cdef long long[::1] xs = xs_arr
    curhi_arr = np.zeros(dim, dtype=np.int64)
    cdef long long[::1] curhi = curhi_arr

    cdef int64_t lo_j, hi_j
    j = 0
    lo_j = lo[0]
    hi_j = hi[0]
    for i in range(m):
        a = A[i, 0]
        if a == 0:
            continue
        cap = b[i] - psum[0, i] - minrest[1, i]
        if a > 0:
            v = c_floordiv(cap, a)
            if v < hi_j:
                hi_j = v
        else:
            v = c_ceildiv(cap, a)
            if v > lo_j:
                lo_j = v
    curhi[0] = hi_j
    xs[0] = lo_j - 1

    while j >= 0:
        xs[j] += 1
        if xs[j] > curhi[j]:
            j -= 1
            continue
        if j == dim - 1:
            return True
        v = xs[j]
        for i in range(m):
            psum[j + 1, i] = psum[j, i] + A[i, j] * v
        j += 1
        lo_j = lo[j]
        hi_j = hi[j]
        for i in range(m):
            a = A[i, j]
            if a == 0:
                continue
            cap = b[i] - psum[j, i] - minrest[j + 1, i]
            if a > 0:
                v = c_floordiv(cap, a)
                if v < hi_j:
                    hi_j = v
            else:
                v = c_ceildiv(cap, a)
                if v > lo_j:
                    lo_j = v
        curhi[j] = hi_j
        xs[j] = lo_j - 1

    return False
