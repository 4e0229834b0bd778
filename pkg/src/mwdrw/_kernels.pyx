# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled hot kernels: sparse polynomial product and Smith form over Z/p^N.

Both require the modulus to be below 2**31 so that every product of two
residues fits in a signed 64-bit integer.  ``_backend`` guards this.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t
from libcpp.unordered_map cimport unordered_map
from cython.operator cimport dereference as deref, preincrement as inc

cnp.import_array()

cdef int64_t DENSE_CAP = 1 << 22


def mul_packed(const int64_t[::1] ka, const int64_t[::1] ca,
               const int64_t[::1] kb, const int64_t[::1] cb,
               int64_t mod, int64_t span):
    cdef Py_ssize_t na = ka.shape[0], nb = kb.shape[0], i, j
    cdef int64_t k1, c1, k
    cdef cnp.ndarray[int64_t, ndim=1] acc
    cdef int64_t[::1] av
    cdef unordered_map[int64_t, int64_t] table
    cdef unordered_map[int64_t, int64_t].iterator it
    if span <= DENSE_CAP and span <= 8 * na * nb + 4096:
        acc = np.zeros(span, dtype=np.int64)
        av = acc
        for i in range(na):
            k1 = ka[i]
            c1 = ca[i]
            for j in range(nb):
                k = k1 + kb[j]
                av[k] = (av[k] + c1 * cb[j]) % mod
        nz = np.flatnonzero(acc)
        return nz.astype(np.int64), acc[nz]
    table.reserve(na * nb)
    for i in range(na):
        k1 = ka[i]
        c1 = ca[i]
        for j in range(nb):
            k = k1 + kb[j]
            table[k] = (table[k] + c1 * cb[j]) % mod
    keys = np.empty(table.size(), dtype=np.int64)
    vals = np.empty(table.size(), dtype=np.int64)
    cdef int64_t[::1] kv = keys
    cdef int64_t[::1] vv = vals
    cdef Py_ssize_t n = 0
    it = table.begin()
    while it != table.end():
        if deref(it).second != 0:
            kv[n] = deref(it).first
            vv[n] = deref(it).second
            n += 1
        inc(it)
    keys = keys[:n]
    vals = vals[:n]
    order = np.argsort(keys, kind="stable")
    return keys[order], vals[order]


cdef int _val(int64_t a, int64_t p, int N) nogil:
    cdef int v = 0
    if a == 0:
        return N
    while a % p == 0:
        a //= p
        v += 1
    return v


cdef int64_t _inv(int64_t a, int64_t mod) nogil:
    cdef int64_t t = 0, newt = 1, r = mod, newr = a % mod, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += mod
    return t


cdef inline void _swap_rows(int64_t[:, ::1] M, Py_ssize_t a, Py_ssize_t b) nogil:
    cdef Py_ssize_t j
    cdef int64_t tmp
    for j in range(M.shape[1]):
        tmp = M[a, j]
        M[a, j] = M[b, j]
        M[b, j] = tmp


cdef inline void _swap_cols(int64_t[:, ::1] M, Py_ssize_t a, Py_ssize_t b) nogil:
    cdef Py_ssize_t i
    cdef int64_t tmp
    for i in range(M.shape[0]):
        tmp = M[i, a]
        M[i, a] = M[i, b]
        M[i, b] = tmp


def snf(A_in, int64_t p, int N):
    """Same contract and pivot rule as ``_kernels_py.snf``."""
    cdef int64_t mod = p ** N
    A_np = np.ascontiguousarray(np.asarray(A_in, dtype=np.int64) % mod)
    if A_np.ndim != 2:
        A_np = A_np.reshape(len(A_in), -1)
    cdef Py_ssize_t m = A_np.shape[0], n = A_np.shape[1]
    U_np = np.eye(m, dtype=np.int64)
    Ui_np = np.eye(m, dtype=np.int64)
    V_np = np.eye(n, dtype=np.int64)
    Vi_np = np.eye(n, dtype=np.int64)
    cdef int64_t[:, ::1] A = A_np
    cdef int64_t[:, ::1] U = U_np
    cdef int64_t[:, ::1] Ui = Ui_np
    cdef int64_t[:, ::1] V = V_np
    cdef int64_t[:, ::1] Vi = Vi_np
    cdef Py_ssize_t t, i, j, i0, j0
    cdef int bv, v, rank = 0
    cdef int64_t pv, unit, s, f
    with nogil:
        for t in range(min(m, n)):
            bv = N
            i0 = -1
            j0 = -1
            for i in range(t, m):
                for j in range(t, n):
                    if A[i, j] != 0:
                        v = _val(A[i, j], p, N)
                        if v < bv:
                            bv = v
                            i0 = i
                            j0 = j
                            if v == 0:
                                break
                if bv == 0:
                    break
            if i0 < 0:
                break
            if i0 != t:
                _swap_rows(A, t, i0)
                _swap_rows(U, t, i0)
                _swap_cols(Ui, t, i0)
            if j0 != t:
                _swap_cols(A, t, j0)
                _swap_cols(V, t, j0)
                _swap_rows(Vi, t, j0)
            pv = 1
            for v in range(bv):
                pv *= p
            unit = A[t, t] // pv
            s = _inv(unit, mod)
            if s != 1:
                for j in range(n):
                    A[t, j] = A[t, j] * s % mod
                for j in range(m):
                    U[t, j] = U[t, j] * s % mod
                for i in range(m):
                    Ui[i, t] = Ui[i, t] * unit % mod
            for i in range(t + 1, m):
                f = A[i, t] // pv
                if f != 0:
                    for j in range(n):
                        A[i, j] = ((A[i, j] - f * A[t, j]) % mod + mod) % mod
                    for j in range(m):
                        U[i, j] = ((U[i, j] - f * U[t, j]) % mod + mod) % mod
                    for j in range(m):
                        Ui[j, t] = (Ui[j, t] + f * Ui[j, i]) % mod
            for j in range(t + 1, n):
                f = A[t, j] // pv
                if f != 0:
                    for i in range(m):
                        A[i, j] = ((A[i, j] - f * A[i, t]) % mod + mod) % mod
                    for i in range(n):
                        V[i, j] = ((V[i, j] - f * V[i, t]) % mod + mod) % mod
                    for i in range(n):
                        Vi[t, i] = (Vi[t, i] + f * Vi[j, i]) % mod
            rank += 1
    return A_np, U_np, Ui_np, V_np, Vi_np, rank
