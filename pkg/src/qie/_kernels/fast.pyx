# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Typed kernels for chunk enumeration and equi-join assembly.

Mirrors qie._kernels.pure exactly: same signatures, same output arrays
in the same order. Enumeration walks candidate rows one at a time
instead of materializing the full free-variable grid, and join assembly
fills the output without the intermediate index arrays the numpy
version needs.
"""

import numpy as np

cimport cython
cimport numpy as cnp

cnp.import_array()

BACKEND = "fast"

from qie._kernels.pure import join_plan  # key packing is shared


@cython.boundscheck(False)
@cython.wraparound(False)
def enumerate_chunk_rows(int n_vars, free_pos, steps, op_t, inv_t):
    """All satisfying rows over a chunk's variables; see the pure twin."""
    cdef cnp.int16_t[:, ::1] op = np.ascontiguousarray(op_t, dtype=np.int16)
    cdef cnp.int16_t[:, ::1] inv = np.ascontiguousarray(inv_t, dtype=np.int16)
    cdef cnp.int32_t[:, ::1] st = np.ascontiguousarray(
        np.asarray(steps, dtype=np.int32).reshape(-1, 4))
    cdef cnp.int64_t[::1] fp = np.ascontiguousarray(free_pos, dtype=np.int64)
    cdef int m = op.shape[0]
    cdef int f = fp.shape[0]
    cdef int ns = st.shape[0]
    cdef long long total = 1
    cdef int i, j, code, r, u, o
    cdef long long cand, rem
    for i in range(f):
        total *= m
    cdef cnp.int16_t[::1] row = np.zeros(n_vars, dtype=np.int16)
    cdef long long kept = 0
    cdef bint ok
    # pass 1: count survivors
    for cand in range(total):
        rem = cand
        for i in range(f - 1, -1, -1):
            row[fp[i]] = <cnp.int16_t> (rem % m)
            rem //= m
        ok = True
        for j in range(ns):
            code = st[j, 0]; r = st[j, 1]; u = st[j, 2]; o = st[j, 3]
            if code == 0:
                row[r] = op[row[u], row[o]]
            elif code == 1:
                row[r] = inv[row[u], row[o]]
            elif code == 2:
                row[u] = inv[row[r], row[o]]
            elif code == 3:
                row[u] = op[row[r], row[o]]
            elif code == 4:
                if op[row[u], row[o]] != row[r]:
                    ok = False
                    break
            else:
                if inv[row[u], row[o]] != row[r]:
                    ok = False
                    break
        if ok:
            kept += 1
    out_arr = np.empty((kept, n_vars), dtype=np.int16)
    cdef cnp.int16_t[:, ::1] out = out_arr
    cdef long long w = 0
    # pass 2: fill
    for cand in range(total):
        rem = cand
        for i in range(f - 1, -1, -1):
            row[fp[i]] = <cnp.int16_t> (rem % m)
            rem //= m
        ok = True
        for j in range(ns):
            code = st[j, 0]; r = st[j, 1]; u = st[j, 2]; o = st[j, 3]
            if code == 0:
                row[r] = op[row[u], row[o]]
            elif code == 1:
                row[r] = inv[row[u], row[o]]
            elif code == 2:
                row[u] = inv[row[r], row[o]]
            elif code == 3:
                row[u] = op[row[r], row[o]]
            elif code == 4:
                if op[row[u], row[o]] != row[r]:
                    ok = False
                    break
            else:
                if inv[row[u], row[o]] != row[r]:
                    ok = False
                    break
        if ok:
            for i in range(n_vars):
                out[w, i] = row[i]
            w += 1
    return out_arr


@cython.boundscheck(False)
@cython.wraparound(False)
def join_emit(rows1, rows2, take2, total, lo, counts, order2):
    """Materialize join matches; see the pure twin for the contract."""
    cdef cnp.int16_t[:, ::1] r1 = np.ascontiguousarray(rows1, dtype=np.int16)
    cdef cnp.int16_t[:, ::1] r2 = np.ascontiguousarray(rows2, dtype=np.int16)
    cdef cnp.int64_t[::1] t2 = np.ascontiguousarray(take2, dtype=np.int64)
    cdef cnp.int64_t[::1] lo_v = np.ascontiguousarray(lo, dtype=np.int64)
    cdef cnp.int64_t[::1] ct = np.ascontiguousarray(counts, dtype=np.int64)
    cdef cnp.int64_t[::1] o2 = np.ascontiguousarray(order2, dtype=np.int64)
    cdef long long tot = total
    cdef int n1c = r1.shape[1]
    cdef int k2 = t2.shape[0]
    out_arr = np.empty((tot, n1c + k2), dtype=np.int16)
    cdef cnp.int16_t[:, ::1] out = out_arr
    cdef long long i, j, w = 0
    cdef long long ri
    cdef int c
    with nogil:
        for i in range(r1.shape[0]):
            for j in range(ct[i]):
                ri = o2[lo_v[i] + j]
                for c in range(n1c):
                    out[w, c] = r1[i, c]
                for c in range(k2):
                    out[w, n1c + c] = r2[ri, t2[c]]
                w += 1
    return out_arr
