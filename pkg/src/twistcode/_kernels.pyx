# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: row reduction mod p and projective weight enumeration.

Mirrors :mod:`twistcode._kernels_py` exactly (same outputs, same
enumeration order); :mod:`twistcode._backend` picks one at import.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _inv_mod(int64_t a, int64_t p):
    cdef int64_t t = 0, new_t = 1, r = p, new_r = a, qt, tmp
    while new_r != 0:
        qt = r // new_r
        tmp = t - qt * new_t
        t = new_t
        new_t = tmp
        tmp = r - qt * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


def rref_modp(M, long long p):
    """Reduced row echelon form of an integer matrix over GF(p).

    Returns ``(R, rank, pivots)``.  Pivots are the first nonzero column
    entries scanning left to right; rows with a zero pivot-column entry are
    skipped during elimination.
    """
    cdef cnp.ndarray[int64_t, ndim=2] A = np.ascontiguousarray(M, dtype=np.int64) % p
    cdef int64_t[:, ::1] R = A
    cdef Py_ssize_t rows = R.shape[0], cols = R.shape[1]
    cdef Py_ssize_t r = 0, c, i, t, piv
    cdef int64_t inv, f, v
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if R[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for t in range(c, cols):
                v = R[r, t]
                R[r, t] = R[piv, t]
                R[piv, t] = v
        inv = _inv_mod(R[r, c], p)
        if inv != 1:
            for t in range(c, cols):
                if R[r, t] != 0:
                    R[r, t] = (R[r, t] * inv) % p
        for i in range(rows):
            if i != r:
                f = R[i, c]
                if f != 0:
                    f = p - f
                    for t in range(c, cols):
                        if R[r, t] != 0:
                            R[i, t] = (R[i, t] + f * R[r, t]) % p
        pivots.append(c)
        r += 1
    return A, r, pivots


def rank_modp(M, long long p):
    """Rank over GF(p) by forward elimination only."""
    cdef cnp.ndarray[int64_t, ndim=2] A = np.ascontiguousarray(M, dtype=np.int64) % p
    cdef int64_t[:, ::1] R = A
    cdef Py_ssize_t rows = R.shape[0], cols = R.shape[1]
    cdef Py_ssize_t r = 0, c, i, t, piv
    cdef int64_t inv, f, v
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if R[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for t in range(c, cols):
                v = R[r, t]
                R[r, t] = R[piv, t]
                R[piv, t] = v
        inv = _inv_mod(R[r, c], p)
        for t in range(c, cols):
            if R[r, t] != 0:
                R[r, t] = (R[r, t] * inv) % p
        for i in range(r + 1, rows):
            f = R[i, c]
            if f != 0:
                f = p - f
                for t in range(c, cols):
                    if R[r, t] != 0:
                        R[i, t] = (R[i, t] + f * R[r, t]) % p
        r += 1
    return r


def projective_weights(G, steps, long long q, long long p, add_table, mul_table, long long limit):
    """Histogram of Hamming weights over projective codeword representatives.

    Messages with leading coefficient 1 are visited lead row by lead row;
    the remaining coefficients run as an odometer (last row fastest) over
    element encodings 0..q-1.  ``steps[j, c]`` is the row added when the
    coefficient of row j moves from c to c+1 (mod q); a length-1 middle
    axis means the step does not depend on c.  Stops after ``limit``
    classes.  Returns ``(hist, seen)``.
    """
    cdef const int64_t[:, ::1] g = np.ascontiguousarray(G, dtype=np.int64)
    cdef const int64_t[:, :, ::1] st = np.ascontiguousarray(steps, dtype=np.int64)
    cdef Py_ssize_t k = g.shape[0], N = g.shape[1], S = st.shape[1]
    cdef cnp.ndarray[int64_t, ndim=1] hist_arr = np.zeros(N + 1, dtype=np.int64)
    cdef int64_t[::1] hist = hist_arr
    cdef cnp.ndarray[int64_t, ndim=1] cw_arr = np.zeros(max(N, 1), dtype=np.int64)
    cdef int64_t[::1] cw = cw_arr
    cdef cnp.ndarray[int64_t, ndim=1] dig_arr = np.zeros(max(k, 1), dtype=np.int64)
    cdef int64_t[::1] digits = dig_arr
    cdef const int64_t[:, ::1] at
    cdef bint use_table = add_table is not None
    if use_table:
        at = np.ascontiguousarray(add_table, dtype=np.int64)
    cdef long long seen = 0
    cdef Py_ssize_t lead, j, t, w, si
    cdef int64_t c, v
    if limit <= 0:
        return hist_arr, 0
    for lead in range(k):
        for t in range(N):
            cw[t] = g[lead, t]
        for j in range(k):
            digits[j] = 0
        w = 0
        for t in range(N):
            if cw[t] != 0:
                w += 1
        hist[w] += 1
        seen += 1
        if seen >= limit:
            return hist_arr, seen
        while True:
            j = k - 1
            while j > lead:
                c = digits[j]
                si = c if S > 1 else 0
                if use_table:
                    for t in range(N):
                        cw[t] = at[cw[t], st[j, si, t]]
                else:
                    for t in range(N):
                        v = cw[t] + st[j, si, t]
                        if v >= p:
                            v -= p
                        cw[t] = v
                c += 1
                if c == q:
                    c = 0
                digits[j] = c
                if c != 0:
                    break
                j -= 1
            if j == lead:
                break
            w = 0
            for t in range(N):
                if cw[t] != 0:
                    w += 1
            hist[w] += 1
            seen += 1
            if seen >= limit:
                return hist_arr, seen
    return hist_arr, seen
