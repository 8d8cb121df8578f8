# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled int64 versions of the kernels in ``_pykernels``.

Arithmetic is carried in 128-bit integers; any result that does not fit in
int64 makes ``pivot`` return False so the caller can fall back to Python
ints.
"""

import numpy as np
cimport numpy as cnp

BACKEND = "cython"

cdef extern from *:
    """
    typedef __int128 i128;
    """
    ctypedef long long i128

cdef long long I64_MAX = 9223372036854775807
cdef long long I64_MIN = -9223372036854775807 - 1


cdef int _pivot(long long[:, ::1] M, long long[:, ::1] out, Py_ssize_t r, Py_ssize_t c,
                long long D) noexcept nogil:
    cdef Py_ssize_t m = M.shape[0], n = M.shape[1], i, j
    cdef long long p = M[r, c], f, x, y
    cdef i128 t
    for i in range(m):
        if i == r:
            for j in range(n):
                out[i, j] = M[i, j]
            continue
        f = M[i, c]
        if f == 0 and p == D:
            for j in range(n):
                out[i, j] = M[i, j]
            continue
        for j in range(n):
            x = M[i, j]
            y = M[r, j]
            if x == 0 and (f == 0 or y == 0):
                out[i, j] = 0
                continue
            t = (<i128> p) * x - (<i128> f) * y
            if I64_MIN < t <= I64_MAX:
                # 64-bit division is several times cheaper than 128-bit
                out[i, j] = (<long long> t) / D
                continue
            t = t / D
            if t > I64_MAX or t < I64_MIN:
                return 0
            out[i, j] = <long long> t
    return 1


def pivot(long long[:, ::1] M, long long[:, ::1] out, Py_ssize_t r, Py_ssize_t c, long long D):
    """Fraction-free pivot into ``out``; False if any entry leaves int64."""
    cdef int ok
    with nogil:
        ok = _pivot(M, out, r, c, D)
    return bool(ok)


def entering(long long[::1] objrow, unsigned char[::1] eligible):
    cdef Py_ssize_t j
    for j in range(eligible.shape[0]):
        if eligible[j] and objrow[j] < 0:
            return j
    return -1


def leaving(long long[:, ::1] M, Py_ssize_t c, long long[::1] basis, Py_ssize_t rhs):
    cdef Py_ssize_t i, best = -1
    cdef long long a, b, best_num = 0, best_den = 0
    cdef i128 lhs, rhs_
    for i in range(basis.shape[0]):
        a = M[i, c]
        if a <= 0:
            continue
        b = M[i, rhs]
        if best < 0:
            best = i; best_num = b; best_den = a
            continue
        lhs = (<i128> b) * best_den
        rhs_ = (<i128> best_num) * a
        if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[best]):
            best = i; best_num = b; best_den = a
    return best


def face_scan(long long[::1] G, int d, int j, bint full, Py_ssize_t max_report):
    cdef long long strides[32]
    cdef int axes[32]
    cdef int others[32]
    cdef int digits[32]
    cdef long long offs[1 << 16]
    cdef int signs[1 << 16]
    cdef int m, t, nfree, nfixed, bits, pc, lo0, fix0
    cdef long long base, vol, minimum = 0, count = 0
    cdef bint seen = False
    cdef long mask
    if d > 16 or j > 16:
        raise ValueError("face_scan supports d <= 16")
    strides[0] = 1
    for m in range(1, d):
        strides[m] = strides[m - 1] * 3
    lo0 = 0 if full else 1
    fix0 = 0 if full else 1
    reports = []
    for mask in range(1 << d):
        if bin(mask).count("1") != j:
            continue
        nfree = 0
        nfixed = 0
        for m in range(d):
            if (mask >> m) & 1:
                axes[nfree] = m
                nfree += 1
            else:
                others[nfixed] = m
                nfixed += 1
        for bits in range(1 << j):
            offs[bits] = 0
            pc = 0
            for t in range(j):
                if (bits >> t) & 1:
                    offs[bits] += strides[axes[t]]
                    pc += 1
            signs[bits] = -1 if (j - pc) & 1 else 1
        # mixed-radix counter: free-axis low index, then fixed-axis grid index
        for t in range(d):
            digits[t] = lo0 if t < nfree else fix0
        while True:
            base = 0
            for t in range(nfree):
                base += strides[axes[t]] * digits[t]
            for t in range(nfixed):
                base += strides[others[t]] * digits[nfree + t]
            vol = 0
            for bits in range(1 << j):
                vol += signs[bits] * G[base + offs[bits]]
            if not seen or vol < minimum:
                minimum = vol
                seen = True
            if vol < 0:
                count += 1
                if len(reports) < max_report:
                    reports.append((mask, base, vol))
            t = 0
            while t < d:
                digits[t] += 1
                if (t < nfree and digits[t] <= 1) or (t >= nfree and digits[t] <= 2):
                    break
                digits[t] = lo0 if t < nfree else fix0
                t += 1
            if t == d:
                break
    return count, minimum, reports
