"""Numpy reference kernels for chunk enumeration and equi-joins.

These are the fallback implementations selected when the compiled
extension is unavailable. Both backends must produce identical arrays
for identical inputs; the test suite enforces this whenever the
extension is present.

Step encoding shared by both backends: each row of the int32 ``steps``
array is (code, r, u, o) with r/u/o column positions inside the chunk's
variable layout and

====  ========================================
code  action
====  ========================================
0     derive col r as op[row[u], row[o]]
1     derive col r as inv[row[u], row[o]]
2     derive col u as inv[row[r], row[o]]
3     derive col u as op[row[r], row[o]]
4     require op[row[u], row[o]] == row[r]
5     require inv[row[u], row[o]] == row[r]
====  ========================================
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"

_KEY_BOUND = 1 << 62


def enumerate_chunk_rows(n_vars, free_pos, steps, op_t, inv_t):
    """All satisfying rows over a chunk's variables.

    Enumerates every combination of the free columns (first free
    position varying slowest), derives the remaining columns, and keeps
    the rows passing every consistency check.

    Returns an (n, n_vars) int16 array.
    """
    m = op_t.shape[0]
    f = len(free_pos)
    total = m ** f
    rows = np.zeros((total, n_vars), dtype=np.int16)
    for i, pos in enumerate(free_pos):
        reps = m ** (f - 1 - i)
        pattern = np.repeat(np.arange(m, dtype=np.int16), reps)
        rows[:, pos] = np.tile(pattern, total // (reps * m))
    alive = np.ones(total, dtype=bool)
    for code, r, u, o in steps:
        if code == 0:
            rows[:, r] = op_t[rows[:, u], rows[:, o]]
        elif code == 1:
            rows[:, r] = inv_t[rows[:, u], rows[:, o]]
        elif code == 2:
            rows[:, u] = inv_t[rows[:, r], rows[:, o]]
        elif code == 3:
            rows[:, u] = op_t[rows[:, r], rows[:, o]]
        elif code == 4:
            alive &= op_t[rows[:, u], rows[:, o]] == rows[:, r]
        else:
            alive &= inv_t[rows[:, u], rows[:, o]] == rows[:, r]
    return rows[alive] if not alive.all() else rows


def join_plan(rows1, rows2, scols1, scols2, m):
    """Match rows on shared key columns without materializing output.

    Keys are packed base-m into int64 and jointly re-compressed through
    np.unique whenever another digit could overflow, so any number of
    shared columns is supported.

    Returns (total, lo, counts, order2): order2 stably sorts rows2 by
    key, lo[i] is the first position in that order matching rows1[i],
    counts[i] the number of matches, total their sum as a python int.
    """
    n1 = rows1.shape[0]
    n2 = rows2.shape[0]
    if len(scols1) == 0:
        lo = np.zeros(n1, dtype=np.int64)
        counts = np.full(n1, n2, dtype=np.int64)
        return int(n1) * int(n2), lo, counts, np.arange(n2, dtype=np.int64)
    k1 = rows1[:, scols1[0]].astype(np.int64)
    k2 = rows2[:, scols2[0]].astype(np.int64)
    bound = m
    for c1, c2 in zip(scols1[1:], scols2[1:]):
        if bound > _KEY_BOUND // m:
            uniq = np.unique(np.concatenate([k1, k2]))
            k1 = np.searchsorted(uniq, k1)
            k2 = np.searchsorted(uniq, k2)
            bound = len(uniq)
        k1 = k1 * m + rows1[:, c1]
        k2 = k2 * m + rows2[:, c2]
        bound *= m
    order2 = np.argsort(k2, kind="stable")
    ks2 = k2[order2]
    lo = np.searchsorted(ks2, k1, side="left")
    hi = np.searchsorted(ks2, k1, side="right")
    counts = hi - lo
    return int(counts.sum()), lo, counts, order2


def join_emit(rows1, rows2, take2, total, lo, counts, order2):
    """Materialize the matches described by a join_plan result.

    Output columns are rows1's columns followed by rows2's ``take2``
    columns; output order is rows1 order, then key-sorted rows2 order
    within each left row.
    """
    n1c = rows1.shape[1]
    out = np.empty((total, n1c + len(take2)), dtype=np.int16)
    left = np.repeat(np.arange(rows1.shape[0], dtype=np.int64), counts)
    out[:, :n1c] = rows1[left]
    starts = np.zeros(len(counts) + 1, dtype=np.int64)
    np.cumsum(counts, out=starts[1:])
    offset = np.arange(total, dtype=np.int64) - starts[:-1][left] + lo[left]
    right = order2[offset]
    if len(take2):
        out[:, n1c:] = rows2[right][:, take2]
    return out
