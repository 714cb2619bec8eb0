"""Kernel backend selection.

The solver's hot loops (chunk enumeration and join assembly) have two
interchangeable implementations: a compiled Cython extension (``fast``)
and a numpy fallback (``pure``). The compiled one is used when the
build produced it; set ``QIE_KERNEL=pure`` or ``QIE_KERNEL=fast`` to
force a backend (forcing ``fast`` raises if the extension is missing).

Both backends return identical arrays for identical inputs, so backend
choice never changes solver output, only speed.
"""

from __future__ import annotations

import os

from qie._kernels import pure

_current = pure


def _load(name):
    if name == "pure":
        return pure
    if name == "fast":
        from qie._kernels import fast
        return fast
    raise ValueError(f"unknown kernel backend {name!r}, use pure or fast")


def select_backend(name):
    """Switch the active backend; returns its name. Mainly for benchmarks.

    None or "auto" picks the compiled backend when present, else pure.
    """
    global _current
    if name is None or name == "auto":
        try:
            _current = _load("fast")
        except ImportError:
            _current = _load("pure")
    else:
        _current = _load(name)
    return _current.BACKEND


_forced = os.environ.get("QIE_KERNEL", "").strip().lower()
select_backend(_forced if _forced not in ("", "auto") else None)


def backend_name():
    """Name of the active backend implementation."""
    return _current.BACKEND


def enumerate_chunk_rows(n_vars, free_pos, steps, op_t, inv_t):
    return _current.enumerate_chunk_rows(n_vars, free_pos, steps, op_t, inv_t)


def join_plan(rows1, rows2, scols1, scols2, m):
    return pure.join_plan(rows1, rows2, scols1, scols2, m)


def join_emit(rows1, rows2, take2, total, lo, counts, order2):
    return _current.join_emit(rows1, rows2, take2, total, lo, counts, order2)
