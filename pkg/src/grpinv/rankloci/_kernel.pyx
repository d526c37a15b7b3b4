# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled rank-enumeration kernel.

Same contract as :func:`grpinv.rankloci._pykernel.scan_range`.
"""

import numpy as np
cimport numpy as cnp

from grpinv.gf import inverse_table
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset

ctypedef long long i64


cdef int _rank(i64* a, int m, int n, i64 p, const i64* inv) noexcept nogil:
    """Rank of the m x n row-major scratch matrix ``a`` (destroyed)."""
    cdef int r = 0, c, i, j, piv
    cdef int full = m if m < n else n
    cdef i64 f, t, pinv
    for c in range(n):
        piv = -1
        for i in range(r, m):
            if a[i * n + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                t = a[r * n + j]
                a[r * n + j] = a[piv * n + j]
                a[piv * n + j] = t
        pinv = inv[a[r * n + c]]
        for i in range(r + 1, m):
            f = a[i * n + c]
            if f != 0:
                f = (f * pinv) % p
                for j in range(c, n):
                    a[i * n + j] = (a[i * n + j] - f * a[r * n + j]) % p
                    if a[i * n + j] < 0:
                        a[i * n + j] += p
        r += 1
        if r == full:
            break
    return r


cdef int _insert(i64* basis, int* pivots, int size, int d, i64* v, i64 p, const i64* inv) noexcept nogil:
    """Try to add ``v`` to the echelon basis; returns 1 if it was independent."""
    cdef int b, j, c
    cdef i64 f
    for b in range(size):
        c = pivots[b]
        f = v[c]
        if f != 0:
            for j in range(d):
                v[j] = (v[j] - f * basis[b * d + j]) % p
                if v[j] < 0:
                    v[j] += p
    c = -1
    for j in range(d):
        if v[j] != 0:
            c = j
            break
    if c < 0:
        return 0
    f = inv[v[c]]
    for j in range(d):
        basis[size * d + j] = (v[j] * f) % p
    pivots[size] = c
    return 1


def scan_range(slices, long p, int lead, long long start, long long stop):
    """Enumerate points with leading coordinate ``lead`` equal to 1.

    Coordinates before ``lead`` are 0; the tail ``lead+1..d-1`` runs over
    the base-p indices ``start..stop-1`` (last coordinate fastest).  With
    ``lead == -1`` every coordinate is part of the tail.  Returns
    ``(counts, basis, sizes)``: rank histogram, and per level k the
    echelon basis of the points of rank < k.
    """
    cdef cnp.ndarray[i64, ndim=3, mode="c"] S = np.ascontiguousarray(slices, dtype=np.int64) % p
    cdef int d = S.shape[0], m = S.shape[1], n = S.shape[2]
    cdef int N = m if m < n else n
    cdef int L = d - 1 - lead
    cdef int mn = m * n
    cdef cnp.ndarray[i64, ndim=1] counts = np.zeros(N + 1, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=3, mode="c"] basis = np.zeros((max(N, 1), d, d), dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] sizes = np.zeros(max(N, 1), dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1, mode="c"] inv_arr = np.ascontiguousarray(inverse_table(p), dtype=np.int64)
    if stop <= start:
        return counts, basis, sizes

    cdef i64* Sp = &S[0, 0, 0]
    cdef i64* inv = &inv_arr[0]
    cdef i64* Bp = &basis[0, 0, 0]
    cdef i64* Cp = &counts[0]
    cdef i64* Zp = &sizes[0]
    cdef i64* M = <i64*> malloc(mn * sizeof(i64))
    cdef i64* scratch = <i64*> malloc(mn * sizeof(i64))
    cdef i64* digits = <i64*> malloc((L + 1) * sizeof(i64))
    cdef i64* point = <i64*> malloc(d * sizeof(i64))
    cdef i64* v = <i64*> malloc(d * sizeof(i64))
    cdef int* pivots = <int*> malloc(max(N, 1) * d * sizeof(int))
    cdef int i, j, k, r, t, off
    cdef long long idx, rem
    cdef i64 x
    try:
        with nogil:
            memset(M, 0, mn * sizeof(i64))
            memset(point, 0, d * sizeof(i64))
            if lead >= 0:
                point[lead] = 1
                memcpy(M, Sp + lead * mn, mn * sizeof(i64))
            rem = start
            for j in range(L - 1, -1, -1):
                digits[j] = rem % p
                rem = rem // p
            for j in range(L):
                point[lead + 1 + j] = digits[j]
                off = (lead + 1 + j) * mn
                for i in range(mn):
                    M[i] = (M[i] + digits[j] * Sp[off + i]) % p
            idx = start
            while True:
                memcpy(scratch, M, mn * sizeof(i64))
                r = _rank(scratch, m, n, p, inv)
                Cp[r] += 1
                for k in range(r, N):
                    if Zp[k] == d:
                        continue
                    memcpy(v, point, d * sizeof(i64))
                    if _insert(Bp + k * d * d, pivots + k * d, <int> Zp[k], d, v, p, inv):
                        Zp[k] += 1
                    else:
                        break
                idx += 1
                if idx >= stop:
                    break
                # odometer step: bump the last digit, carrying leftwards
                j = L - 1
                while j >= 0:
                    off = (lead + 1 + j) * mn
                    for i in range(mn):
                        x = M[i] + Sp[off + i]
                        if x >= p:
                            x -= p
                        M[i] = x
                    digits[j] += 1
                    if digits[j] == p:
                        digits[j] = 0
                        point[lead + 1 + j] = 0
                        j -= 1
                    else:
                        point[lead + 1 + j] = digits[j]
                        break
    finally:
        free(M)
        free(scratch)
        free(digits)
        free(point)
        free(v)
        free(pivots)
    return counts, basis, sizes
