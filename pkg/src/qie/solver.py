"""Coloring-space solvers for link diagrams.

Computes Hom(Q(L), T): every assignment of quandle elements to arcs
satisfying all crossing relations. Two methods are provided. Direct
enumeration over |T|^arcs assignments serves as the oracle for small
systems. The production path is divide-and-conquer: partition the
crossings into chunks of a few crossings each, enumerate every chunk's
solution set over its own arcs (enumerating only a minimal set of free
arcs and deriving the rest through the relations), then fold the chunk
sets together with equi-joins on shared arcs, always joining the pair
of partial sets with the smallest estimated result first.

All solution sets are numpy int16 arrays with one column per arc
variable. Final colorings are reported in lexicographic order over
arcs 1..arc_count, so output is identical across runs, worker counts,
and kernel backends.
"""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from qie import _kernels
from qie.diagram import validate

__all__ = [
    "DEFAULT_ROW_CAP",
    "SolverError",
    "GuardExceeded",
    "RowCapExceeded",
    "DisjointJoinWarning",
    "DisconnectedDiagramWarning",
    "PartialSolutionSet",
    "HomSet",
    "ChunkPlan",
    "check_coloring",
    "brute_force_solve",
    "partition_chunks",
    "enumerate_chunk",
    "join_partial",
    "solve",
]

DEFAULT_ROW_CAP = 10 ** 7
_ROW_CAP_ENV = "QIE_ROW_CAP"
_BRUTE_GUARD = 10 ** 8
_BRUTE_BATCH = 1 << 18


class SolverError(Exception):
    """Base class for solver failures."""


class GuardExceeded(SolverError):
    """Direct enumeration would exceed its assignment-count guard."""


class RowCapExceeded(SolverError):
    """An intermediate solution set would exceed the row cap."""


class DisjointJoinWarning(UserWarning):
    """A join had no shared variables and formed a full cross product."""


class DisconnectedDiagramWarning(UserWarning):
    """Chunk ordering found components with no connecting arcs."""


@dataclass(frozen=True)
class PartialSolutionSet:
    """Assignments over a subset of arc variables.

    variables are ascending 1-based arc indices; rows is an int16 array
    with one column per variable, duplicate-free, each row satisfying
    every relation of the chunks it was built from.
    """

    variables: tuple
    rows: np.ndarray

    def __len__(self):
        return int(self.rows.shape[0])

    def as_set(self):
        """Rows as a set of tuples, for order-free comparisons."""
        return {tuple(int(v) for v in row) for row in self.rows}


@dataclass(frozen=True)
class HomSet:
    """The complete coloring set Hom(Q(L), T) of a diagram.

    colorings has one column per arc (arcs 1..arc_count in order) and
    one row per coloring, in lexicographic row order.
    """

    link: object
    quandle: object
    colorings: np.ndarray

    def __len__(self):
        return int(self.colorings.shape[0])

    def as_set(self):
        """Colorings as a set of tuples, for order-free comparisons."""
        return {tuple(int(v) for v in row) for row in self.colorings}


class ChunkPlan(list):
    """Ordered list of chunks (tuples of Crossing) plus planner notes."""

    def __init__(self, chunks=(), notes=()):
        super().__init__(chunks)
        self.notes = list(notes)


def _resolve_row_cap(row_cap):
    if row_cap is not None:
        return int(row_cap)
    env = os.environ.get(_ROW_CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise SolverError(
                f"{_ROW_CAP_ENV} must be an integer, got {env!r}"
            ) from None
    return DEFAULT_ROW_CAP


def _equation_arrays(d):
    """Crossing relations as index arrays (result, under, over, sign)."""
    if not d.crossings:
        z = np.zeros(0, dtype=np.int64)
        return z, z, z, np.zeros(0, dtype=np.int64)
    arr = np.asarray(
        [(c.result, c.under_in, c.over, c.sign) for c in d.crossings],
        dtype=np.int64,
    )
    return arr[:, 0] - 1, arr[:, 1] - 1, arr[:, 2] - 1, arr[:, 3]


def check_coloring(d, q, colors):
    """Index of the first crossing a coloring violates, or -1 if none."""
    colors = np.asarray(colors, dtype=np.int64)
    if colors.shape != (d.arc_count,):
        raise ValueError(
            f"coloring must assign all {d.arc_count} arcs, got shape {colors.shape}"
        )
    ri, ui, oi, si = _equation_arrays(d)
    if ri.size == 0:
        return -1
    rhs = np.empty(ri.size, dtype=np.int64)
    pos = si > 0
    if pos.any():
        rhs[pos] = q.op_pairs(colors[ui[pos]], colors[oi[pos]], 1)
    if (~pos).any():
        rhs[~pos] = q.op_pairs(colors[ui[~pos]], colors[oi[~pos]], -1)
    bad = np.flatnonzero(colors[ri] != rhs)
    return int(bad[0]) if bad.size else -1


def brute_force_solve(d, q, limit=_BRUTE_GUARD, force=False):
    """Hom(Q(L), T) by filtering every assignment; the oracle method.

    Guarded by |T|^arc_count <= limit (default 10**8); pass force=True
    to override. Enumeration is batched, so memory stays proportional
    to the batch size plus the result.
    """
    m = len(q)
    arcs = d.arc_count
    total = m ** arcs
    if total > limit and not force:
        raise GuardExceeded(
            f"direct enumeration needs {m}^{arcs} = {total} assignments, "
            f"over the guard {limit}; use the divide-and-conquer solver "
            "or pass force=True"
        )
    ri, ui, oi, si = _equation_arrays(d)
    pos = si > 0
    radix = m ** np.arange(arcs - 1, -1, -1, dtype=np.int64)
    keep = []
    for lo in range(0, total, _BRUTE_BATCH):
        hi = min(total, lo + _BRUTE_BATCH)
        idx = np.arange(lo, hi, dtype=np.int64)
        cols = (idx[:, None] // radix[None, :]) % m
        ok = np.ones(hi - lo, dtype=bool)
        for j in range(ri.size):
            rhs = q.op_pairs(cols[:, ui[j]], cols[:, oi[j]], 1 if pos[j] else -1)
            ok &= cols[:, ri[j]] == rhs
        if ok.any():
            keep.append(cols[ok].astype(np.int16))
    if keep:
        colorings = np.concatenate(keep, axis=0)
    else:
        colorings = np.zeros((0, arcs), dtype=np.int16)
    return HomSet(d, q, np.ascontiguousarray(colorings))


def partition_chunks(d, chunk_size=3):
    """Partition the crossings into small chunks and order them.

    Chunks are grown greedily from the lowest-index unassigned crossing,
    at each step adding the crossing sharing the most arcs with the
    chunk so far (ties: fewest new arcs, then lowest index), never
    adding a crossing sharing none. The chunk sequence is then ordered
    so every chunk after the first shares at least one arc with the
    union of its predecessors; when that is impossible the diagram is
    disconnected, a note is recorded, and the next component follows in
    sequence.
    """
    if not 1 <= int(chunk_size) <= 5:
        raise ValueError(f"chunk_size must be in 1..5, got {chunk_size}")
    crossings = d.crossings
    arcsets = [set(c.arcs) for c in crossings]
    unassigned = set(range(len(crossings)))
    raw = []
    while unassigned:
        seed = min(unassigned)
        members = [seed]
        arcs = set(arcsets[seed])
        unassigned.discard(seed)
        while len(members) < chunk_size and unassigned:
            best, best_key = None, None
            for c in unassigned:
                shared = len(arcsets[c] & arcs)
                if shared == 0:
                    continue
                key = (shared, -len(arcsets[c] - arcs), -c)
                if best is None or key > best_key:
                    best, best_key = c, key
            if best is None:
                break
            members.append(best)
            arcs |= arcsets[best]
            unassigned.discard(best)
        raw.append((sorted(members), arcs))

    notes = []
    order = []
    placed = set()
    remaining = list(range(len(raw)))
    while remaining:
        if not order:
            pick = remaining[0]
        else:
            pick = max(remaining, key=lambda ci: (len(raw[ci][1] & placed), -ci))
            if not raw[pick][1] & placed:
                pick = min(remaining)
                notes.append(
                    f"diagram is disconnected: {len(remaining)} chunk(s) share "
                    "no arcs with the part already processed; starting a new "
                    "component"
                )
        order.append(pick)
        placed |= raw[pick][1]
        remaining.remove(pick)
    chunks = [tuple(crossings[i] for i in raw[ci][0]) for ci in order]
    return ChunkPlan(chunks, notes)


def _chunk_plan(chunk):
    """Propagation plan: (variables, free positions, encoded steps).

    Repeatedly derives any variable pinned down by a relation with one
    unknown (the result via op/inv_op, the incoming under-arc via the
    inverse), rechecks fully-known relations, and otherwise frees the
    variable appearing most often as an over-arc among the unresolved
    relations, so enumeration covers a minimal set of free arcs.
    """
    vars_ = sorted({a for c in chunk for a in c.arcs})
    pos = {v: i for i, v in enumerate(vars_)}
    known = set()
    steps = []
    free = []
    pending = list(chunk)
    while pending:
        progressed = True
        while progressed:
            progressed = False
            for c in list(pending):
                unk = {a for a in c.arcs if a not in known}
                enc = (pos[c.result], pos[c.under_in], pos[c.over])
                if not unk:
                    steps.append((4 if c.sign > 0 else 5, *enc))
                elif len(unk) == 1:
                    (v,) = unk
                    if v == c.result and v not in (c.under_in, c.over):
                        steps.append((0 if c.sign > 0 else 1, *enc))
                    elif v == c.under_in and v not in (c.result, c.over):
                        steps.append((2 if c.sign > 0 else 3, *enc))
                    else:
                        continue
                    known.add(v)
                else:
                    continue
                pending.remove(c)
                progressed = True
        if pending:
            cand = sorted({a for c in pending for a in c.arcs if a not in known})
            v = max(cand, key=lambda a: (sum(1 for c in pending if c.over == a), -a))
            free.append(v)
            known.add(v)
    return vars_, [pos[v] for v in free], steps


def enumerate_chunk(chunk, q, row_cap=None):
    """All assignments over a chunk's arcs satisfying its relations.

    Enumerates only the free arcs of the propagation plan and derives
    the rest, so the candidate count is |T|^free rather than
    |T|^arcs-of-chunk. row_cap bounds the candidate count when given.
    """
    chunk = tuple(chunk)
    if not chunk:
        raise ValueError("chunk must be nonempty")
    op_t, inv_t = q.tables()
    vars_, free_pos, steps = _chunk_plan(chunk)
    m = len(q)
    if row_cap is not None and m ** len(free_pos) > row_cap:
        raise RowCapExceeded(
            f"chunk enumeration needs {m}^{len(free_pos)} candidate rows, "
            f"over the cap {row_cap}"
        )
    steps_arr = np.asarray(steps, dtype=np.int32).reshape(-1, 4)
    free_arr = np.asarray(free_pos, dtype=np.int64)
    rows = _kernels.enumerate_chunk_rows(
        len(vars_), free_arr, steps_arr, op_t, inv_t
    )
    return PartialSolutionSet(tuple(vars_), rows)


def join_partial(p1, p2, row_cap=DEFAULT_ROW_CAP):
    """Equi-join two partial solution sets on their shared variables.

    Keeps every merge of a row from each side that agrees on all shared
    variables. With no shared variables the full cross product is
    formed and a DisjointJoinWarning is emitted. Raises RowCapExceeded
    when the result would exceed row_cap (None disables the cap).
    """
    shared = sorted(set(p1.variables) & set(p2.variables))
    if not shared:
        warnings.warn(
            f"join of variable sets {p1.variables} and {p2.variables} "
            "shares nothing; forming the full cross product",
            DisjointJoinWarning,
            stacklevel=2,
        )
    scols1 = np.asarray([p1.variables.index(v) for v in shared], dtype=np.int64)
    scols2 = np.asarray([p2.variables.index(v) for v in shared], dtype=np.int64)
    m = int(max(p1.rows.max(initial=0), p2.rows.max(initial=0))) + 1
    total, lo, counts, order2 = _kernels.join_plan(
        p1.rows, p2.rows, scols1, scols2, m
    )
    if row_cap is not None and total > row_cap:
        raise RowCapExceeded(
            f"join would produce {total} rows, over the cap {row_cap}; "
            "raise the cap or adjust the chunking"
        )
    extra = [v for v in p2.variables if v not in set(shared)]
    take2 = np.asarray([p2.variables.index(v) for v in extra], dtype=np.int64)
    merged = _kernels.join_emit(
        p1.rows, p2.rows, take2, total, lo, counts, order2
    )
    variables = list(p1.variables) + extra
    order = np.argsort(np.asarray(variables))
    return PartialSolutionSet(
        tuple(sorted(variables)), np.ascontiguousarray(merged[:, order])
    )


def solve(d, q, chunk_size=3, row_cap=None, threads=1):
    """Hom(Q(L), T) by chunk enumeration and greedy pairwise joins.

    The diagram must be strict-valid unless flagged as a tangle. At
    each fold step the pair of partial sets with the smallest estimated
    join size n1*n2 / |T|^shared is merged (ties prefer more shared
    variables), which keeps intermediate row counts near the final
    count in practice. Arcs mentioned by no relation range freely.

    row_cap None reads the QIE_ROW_CAP environment variable, falling
    back to 10**7. threads parallelizes chunk enumeration only; results
    are byte-identical for every thread count.
    """
    cap = _resolve_row_cap(row_cap)
    if not d.tangle:
        report = validate(d, "strict")
        if not report.ok:
            raise SolverError(
                "diagram is not strict-valid: "
                + "; ".join(report.findings)
                + " (parse with tangle=true to solve open diagrams)"
            )
    m = len(q)
    q.tables()

    plan = partition_chunks(d, chunk_size)
    for note in plan.notes:
        warnings.warn(note, DisconnectedDiagramWarning, stacklevel=2)

    if threads > 1 and len(plan) > 1:
        with ThreadPoolExecutor(max_workers=int(threads)) as ex:
            parts = list(ex.map(lambda ch: enumerate_chunk(ch, q, cap), plan))
    else:
        parts = [enumerate_chunk(ch, q, cap) for ch in plan]
    if not parts:
        parts = [PartialSolutionSet((), np.zeros((1, 0), dtype=np.int16))]

    while len(parts) > 1:
        best = None
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                s = len(set(parts[i].variables) & set(parts[j].variables))
                n12 = len(parts[i]) * len(parts[j])
                key = (n12 / float(m ** s), -s, n12, i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        _, i, j = best
        merged = join_partial(parts[i], parts[j], row_cap=cap)
        parts = [p for k, p in enumerate(parts) if k not in (i, j)]
        parts.append(merged)

    final = parts[0]
    rows = final.rows
    variables = list(final.variables)
    have = set(variables)
    for a in range(1, d.arc_count + 1):
        if a in have:
            continue
        n0 = rows.shape[0]
        if n0 * m > cap:
            raise RowCapExceeded(
                f"free-arc expansion would produce {n0 * m} rows, over the cap {cap}"
            )
        rows = np.repeat(rows, m, axis=0)
        col = np.tile(np.arange(m, dtype=np.int16), n0)[:, None]
        rows = np.concatenate([rows, col], axis=1)
        variables.append(a)
    order = np.argsort(np.asarray(variables))
    rows = rows[:, order]
    rows = rows[np.lexsort(rows[:, ::-1].T)]
    return HomSet(d, q, np.ascontiguousarray(rows))
