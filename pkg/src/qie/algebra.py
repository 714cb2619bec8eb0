"""Finite quandles and the algebra used to color link diagrams.

A quandle is a set with a binary operation x > y satisfying, for all
elements x, y, z:

1. idempotency, x > x = x;
2. right invertibility, there is a unique w with w > y = x, written
   w = x >^{-1} y;
3. right self-distributivity, (x > y) > z = (x > z) > (y > z).

The axioms encode invariance of arc colorings under the three
Reidemeister moves, which is what makes coloring counts link invariants.

This module provides prime-field scalars, alternating bilinear forms,
and the finite quandles used as coloring targets:

* symplectic quandles on (Z_p)^dim with x > y = x + <x, y> y,
* Takasaki kei on Z_n with x > y = 2y - x,
* Alexander quandles on Z_n with x > y = t x + (1 - t) y,
* trivial quandles with x > y = x,
* arbitrary operation tables loaded from CSV.

Elements are addressed by index in a fixed lexicographic enumeration so
that solver output is reproducible. Operations are precomputed into
numpy lookup tables up to TABLE_LIMIT elements and evaluated from the
defining formula above that size.
"""

from __future__ import annotations

import csv
import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PRIME_LIMIT",
    "TABLE_LIMIT",
    "AXIOM_SCAN_LIMIT",
    "QuandleError",
    "QuandleSpecError",
    "SizeGuardError",
    "SubquandleError",
    "FieldElement",
    "SymplecticForm",
    "FiniteQuandle",
    "AxiomReport",
    "build_quandle",
    "check_axioms",
    "connected_components",
    "quandle_op",
    "is_prime",
]

PRIME_LIMIT = 1 << 16
TABLE_LIMIT = 4096
AXIOM_SCAN_LIMIT = 10 ** 4

_BLOCK = 1 << 20


class QuandleError(Exception):
    """Base class for quandle construction and analysis errors."""


class QuandleSpecError(QuandleError):
    """Malformed spec string or invalid construction parameters."""


class SizeGuardError(QuandleError):
    """A scan or table build would exceed its configured size guard."""


class SubquandleError(QuandleError):
    """A subset is not closed under the quandle operations."""


def is_prime(p):
    """Return True when the integer p is prime (trial division)."""
    p = int(p)
    if p < 2:
        return False
    for d in range(2, math.isqrt(p) + 1):
        if p % d == 0:
            return False
    return True


def _check_prime(p):
    if not isinstance(p, (int, np.integer)):
        raise QuandleSpecError(f"modulus must be an integer, got {p!r}")
    p = int(p)
    if p > PRIME_LIMIT:
        raise QuandleSpecError(f"modulus {p} exceeds the limit {PRIME_LIMIT}")
    if not is_prime(p):
        raise QuandleSpecError(f"modulus {p} is not prime")
    return p


class FieldElement:
    """Residue in the prime field Z_p with exact modular arithmetic.

    Supports +, -, *, / (and unary -) against other elements of the same
    field or plain integers; division uses the Fermat inverse.
    """

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.p = _check_prime(p)
        self.value = int(value) % self.p

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise QuandleSpecError(
                    f"mixed field moduli {self.p} and {other.p}"
                )
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.p
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def __pow__(self, exponent):
        if not isinstance(exponent, (int, np.integer)):
            return NotImplemented
        e = int(exponent)
        if e < 0:
            return FieldElement(
                pow(self.inverse().value, -e, self.p), self.p
            )
        return FieldElement(pow(self.value, e, self.p), self.p)

    def inverse(self):
        """Multiplicative inverse; raises ZeroDivisionError at zero."""
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return FieldElement(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self * FieldElement(v, self.p).inverse()

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(v, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __repr__(self):
        return f"FieldElement({self.value}, p={self.p})"


def _det_mod(entries, p):
    """Determinant of an integer matrix mod prime p (Gaussian elimination)."""
    a = (np.asarray(entries, dtype=np.int64) % p).copy()
    n = a.shape[0]
    det = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r, col]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            det = (-det) % p
        det = det * int(a[col, col]) % p
        inv = pow(int(a[col, col]), p - 2, p)
        for r in range(col + 1, n):
            f = int(a[r, col]) * inv % p
            if f:
                a[r, col:] = (a[r, col:] - f * a[col, col:]) % p
    return det


class SymplecticForm:
    """Alternating bilinear form <x, y> = x A y^T on (Z_p)^dim.

    The matrix A must be anti-symmetric with a zero diagonal, so that
    <x, x> = 0 for every vector, including characteristic 2 where
    anti-symmetry alone does not force it. Non-degeneracy (det A != 0
    mod p) is always computed and can be required at construction.
    """

    def __init__(self, p, matrix, require_nondegenerate=False):
        self.p = _check_prime(p)
        try:
            ent = np.asarray(
                [[int(e) % self.p for e in row] for row in matrix],
                dtype=np.int64,
            )
        except (TypeError, ValueError) as exc:
            raise QuandleSpecError(f"bad form matrix: {exc}") from exc
        if ent.ndim != 2 or ent.shape[0] != ent.shape[1]:
            raise QuandleSpecError("form matrix must be square")
        dim = int(ent.shape[0])
        if dim <= 0 or dim % 2:
            raise QuandleSpecError(
                f"form dimension must be even and positive, got {dim}"
            )
        if np.any(np.diagonal(ent)):
            raise QuandleSpecError("form matrix must have a zero diagonal")
        if np.any((ent + ent.T) % self.p):
            raise QuandleSpecError("form matrix must be anti-symmetric mod p")
        self.dim = dim
        self._entries = ent
        self.matrix = tuple(
            tuple(FieldElement(int(e), self.p) for e in row) for row in ent
        )
        self.nondegenerate = _det_mod(ent, self.p) != 0
        if require_nondegenerate and not self.nondegenerate:
            raise QuandleSpecError(
                f"form matrix is degenerate mod {self.p}"
            )

    @classmethod
    def standard(cls, p, dim=2, a=1, require_nondegenerate=False):
        """Block-diagonal form with [[0, a], [-a, 0]] blocks of size 2."""
        p = _check_prime(p)
        if dim <= 0 or dim % 2:
            raise QuandleSpecError(
                f"form dimension must be even and positive, got {dim}"
            )
        ent = np.zeros((dim, dim), dtype=np.int64)
        for k in range(0, dim, 2):
            ent[k, k + 1] = a % p
            ent[k + 1, k] = -a % p
        return cls(p, ent, require_nondegenerate)

    def evaluate(self, x, y):
        """Form value <x, y> for coordinate sequences x and y."""
        xv = np.asarray([int(c) for c in x], dtype=np.int64)
        yv = np.asarray([int(c) for c in y], dtype=np.int64)
        if xv.shape != (self.dim,) or yv.shape != (self.dim,):
            raise QuandleSpecError(f"vectors must have dimension {self.dim}")
        return int(xv @ self._entries @ yv % self.p)

    def __repr__(self):
        return f"SymplecticForm(p={self.p}, dim={self.dim})"


class FiniteQuandle:
    """Finite quandle with elements addressed by index.

    Attributes
    ----------
    kind : str
        One of "symplectic", "takasaki", "alexander", "trivial", "table".
    elements : tuple
        Element labels in canonical order: lexicographic coordinate
        tuples for symplectic quandles, residues 0..n-1 otherwise.
    params : dict
        Construction parameters (modulus, twist, table size, form data).
    form : SymplecticForm or None

    Use the classmethod factories or :func:`build_quandle`; the raw
    constructor is internal plumbing.
    """

    def __init__(self, kind, elements, params=None, form=None,
                 op_table=None, inv_table=None):
        self.kind = kind
        self.elements = tuple(elements)
        self.params = dict(params or {})
        self.form = form
        self._index = None
        n = len(self.elements)
        if n == 0:
            raise QuandleSpecError("quandle must be nonempty")
        if kind == "symplectic":
            if form is None:
                raise QuandleSpecError("symplectic kind requires a form")
            self._vectors = np.asarray(self.elements, dtype=np.int64)
            self._powers = form.p ** np.arange(
                form.dim - 1, -1, -1, dtype=np.int64
            )
        elif kind == "alexander":
            self._t_inv = pow(self.params["t"], -1, self.params["n"])
        self._op_table = op_table
        self._inv_table = inv_table
        if op_table is None and n <= TABLE_LIMIT:
            self._build_tables()

    # -- factories ---------------------------------------------------

    @classmethod
    def symplectic(cls, form):
        """Quandle on (Z_p)^dim with x > y = x + <x, y> y."""
        elements = tuple(itertools.product(range(form.p), repeat=form.dim))
        return cls("symplectic", elements,
                   params={"p": form.p, "dim": form.dim}, form=form)

    @classmethod
    def takasaki(cls, n):
        """Kei on Z_n with x > y = 2y - x; an involution in each column."""
        n = int(n)
        if n < 1:
            raise QuandleSpecError(f"takasaki size must be >= 1, got {n}")
        return cls("takasaki", range(n), params={"n": n})

    @classmethod
    def alexander(cls, n, t):
        """Quandle on Z_n with x > y = t x + (1 - t) y for a unit t."""
        n = int(n)
        if n < 1:
            raise QuandleSpecError(f"alexander size must be >= 1, got {n}")
        t = int(t) % n
        if math.gcd(t, n) != 1:
            raise QuandleSpecError(
                f"twist t={t} is not a unit mod {n}, operation would not "
                "be right-invertible"
            )
        return cls("alexander", range(n), params={"n": n, "t": t})

    @classmethod
    def trivial(cls, size):
        """Quandle with x > y = x for all x, y."""
        size = int(size)
        if size < 1:
            raise QuandleSpecError(f"trivial size must be >= 1, got {size}")
        return cls("trivial", range(size), params={"size": size})

    @classmethod
    def from_table(cls, table):
        """Quandle (or candidate) given by an explicit m x m index table.

        The table is not required to satisfy the axioms; run
        :func:`check_axioms` to verify. The inverse table is derived
        column-wise and is only meaningful where columns are
        permutations.
        """
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise QuandleSpecError("operation table must be square")
        m = int(arr.shape[0])
        if m < 1:
            raise QuandleSpecError("operation table must be nonempty")
        if m > np.iinfo(np.int16).max:
            raise QuandleSpecError(f"operation table too large ({m} rows)")
        if arr.min() < 0 or arr.max() >= m:
            raise QuandleSpecError(
                f"table entries must be element indices in 0..{m - 1}"
            )
        op = arr.astype(np.int16)
        inv = np.zeros_like(op)
        rows = np.broadcast_to(np.arange(m, dtype=np.int16)[:, None], (m, m))
        cols = np.broadcast_to(np.arange(m)[None, :], (m, m))
        inv[op, cols] = rows
        return cls("table", range(m), params={"size": m},
                   op_table=op, inv_table=inv)

    # -- evaluation --------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteQuandle(kind={self.kind!r}, size={len(self)})"

    def index(self, label):
        """Index of an element label in the canonical enumeration."""
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        key = tuple(label) if isinstance(label, (list, np.ndarray)) else label
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"{label!r} is not an element label") from None

    def _formula_pairs(self, a, b, sgn):
        """Elementwise x >^{sgn} y on index arrays, from the formula."""
        if self.kind == "symplectic":
            p = self.form.p
            x = self._vectors[a]
            y = self._vectors[b]
            g = np.einsum("...i,ij,...j->...", x, self.form._entries, y) % p
            res = (x + sgn * g[..., None] * y) % p
            return res @ self._powers
        if self.kind == "takasaki":
            n = self.params["n"]
            a2, b2 = np.broadcast_arrays(a, b)
            return (2 * b2 - a2) % n
        if self.kind == "alexander":
            n = self.params["n"]
            t = self.params["t"] if sgn > 0 else self._t_inv
            return (t * a + (1 - t) * b) % n
        if self.kind == "trivial":
            a2, _ = np.broadcast_arrays(a, b)
            return a2.copy()
        raise SizeGuardError(
            "table-backed quandle has no closed-form operation"
        )

    def op_pairs(self, a, b, sign=1):
        """Vectorized x >^{sign} y on broadcastable index arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        n = len(self.elements)
        for arr in (a, b):
            if arr.size and (arr.min() < 0 or arr.max() >= n):
                raise IndexError(f"element index out of range 0..{n - 1}")
        if self._op_table is not None:
            t = self._op_table if sign > 0 else self._inv_table
            return t[a, b].astype(np.int64)
        return self._formula_pairs(a, b, 1 if sign > 0 else -1)

    def op(self, a, b):
        """x > y on element indices."""
        return int(self.op_pairs(a, b, 1))

    def inv_op(self, a, b):
        """x >^{-1} y on element indices."""
        return int(self.op_pairs(a, b, -1))

    def tables(self):
        """(op, inv_op) int16 lookup tables, tables[a, b] = a >^{+-1} b.

        Raises SizeGuardError for formula-backed quandles above
        TABLE_LIMIT elements.
        """
        if self._op_table is None:
            raise SizeGuardError(
                f"no lookup tables for size {len(self)} > {TABLE_LIMIT}"
            )
        return self._op_table, self._inv_table

    def _build_tables(self):
        n = len(self.elements)
        idx = np.arange(n, dtype=np.int64)
        op = np.empty((n, n), dtype=np.int16)
        inv = np.empty((n, n), dtype=np.int16)
        step = max(1, _BLOCK // n)
        for lo in range(0, n, step):
            hi = min(n, lo + step)
            blk = idx[lo:hi, None]
            op[lo:hi] = self._formula_pairs(blk, idx[None, :], 1)
            inv[lo:hi] = self._formula_pairs(blk, idx[None, :], -1)
        self._op_table = op
        self._inv_table = inv


# -- spec parsing ----------------------------------------------------


def _split_top(s):
    """Split on commas outside brackets; used for matrix-valued keys."""
    parts, cur, depth = [], [], 0
    for ch in s:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
            if depth < 0:
                raise QuandleSpecError(f"unbalanced brackets in {s!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise QuandleSpecError(f"unbalanced brackets in {s!r}")
    parts.append("".join(cur))
    return [x.strip() for x in parts]


def _parse_kv(rest, spec):
    kv = {}
    items = _split_top(rest) if rest.strip() else []
    for item in items:
        if not item:
            raise QuandleSpecError(f"empty key=value item in {spec!r}")
        key, eq, val = item.partition("=")
        key = key.strip().lower()
        if not eq or not key or not val.strip():
            raise QuandleSpecError(
                f"expected key=value, got {item!r} in {spec!r}"
            )
        if key in kv:
            raise QuandleSpecError(f"duplicate key {key!r} in {spec!r}")
        kv[key] = val.strip()
    return kv


def _take_int(kv, key, spec, default=None):
    if key not in kv:
        if default is None:
            raise QuandleSpecError(f"missing key {key!r} in {spec!r}")
        return default
    try:
        return int(kv.pop(key))
    except ValueError:
        raise QuandleSpecError(
            f"key {key!r} must be an integer in {spec!r}"
        ) from None


def _take_bool(kv, key, default=False):
    if key not in kv:
        return default
    val = kv.pop(key).lower()
    if val in ("1", "true", "yes"):
        return True
    if val in ("0", "false", "no"):
        return False
    raise QuandleSpecError(f"key {key!r} must be a boolean, got {val!r}")


def build_quandle(spec):
    """Build a FiniteQuandle from a spec string.

    Grammar: ``kind:key=value(,key=value)*`` with kinds

    * ``symplectic``: keys ``p`` (prime), ``n`` (dim = 2n) or ``dim``,
      and either ``a`` (2x2 blocks [[0, a], [-a, 0]], default 1) or
      ``matrix`` (explicit entries in nested brackets); optional
      ``nondegenerate`` to require det != 0 mod p.
    * ``takasaki``: key ``n``.
    * ``alexander``: keys ``n`` and ``t`` (t must be a unit mod n).
    * ``trivial``: key ``size``.
    * ``table``: key ``path``, a CSV file holding an m x m index table.

    Examples
    --------
    >>> len(build_quandle("symplectic:p=5,n=1"))
    25
    >>> build_quandle("takasaki:n=5").op(1, 3)
    0
    """
    if not isinstance(spec, str):
        raise QuandleSpecError(f"spec must be a string, got {type(spec)}")
    kind, sep, rest = spec.partition(":")
    kind = kind.strip().lower()
    if not kind:
        raise QuandleSpecError(f"missing kind in {spec!r}")
    kv = _parse_kv(rest if sep else "", spec)

    if kind == "symplectic":
        p = _take_int(kv, "p", spec)
        require = _take_bool(kv, "nondegenerate")
        if "matrix" in kv:
            if "a" in kv or "n" in kv or "dim" in kv:
                raise QuandleSpecError(
                    f"matrix excludes keys a/n/dim in {spec!r}"
                )
            try:
                entries = json.loads(kv.pop("matrix"))
            except json.JSONDecodeError as exc:
                raise QuandleSpecError(
                    f"bad matrix literal in {spec!r}: {exc}"
                ) from exc
            form = SymplecticForm(p, entries, require)
        else:
            if "dim" in kv:
                dim = _take_int(kv, "dim", spec)
            else:
                dim = 2 * _take_int(kv, "n", spec, default=1)
            a = _take_int(kv, "a", spec, default=1)
            form = SymplecticForm.standard(p, dim, a, require)
        q = FiniteQuandle.symplectic(form)
    elif kind == "takasaki":
        q = FiniteQuandle.takasaki(_take_int(kv, "n", spec))
    elif kind == "alexander":
        q = FiniteQuandle.alexander(
            _take_int(kv, "n", spec), _take_int(kv, "t", spec)
        )
    elif kind == "trivial":
        q = FiniteQuandle.trivial(_take_int(kv, "size", spec))
    elif kind == "table":
        if "path" not in kv:
            raise QuandleSpecError(f"missing key 'path' in {spec!r}")
        path = kv.pop("path")
        try:
            with open(path, newline="", encoding="utf-8") as fh:
                rows = [
                    [int(cell) for cell in row]
                    for row in csv.reader(fh)
                    if row
                ]
        except OSError as exc:
            raise QuandleSpecError(f"cannot read table {path!r}: {exc}") from exc
        except ValueError as exc:
            raise QuandleSpecError(f"non-integer entry in {path!r}: {exc}") from exc
        q = FiniteQuandle.from_table(rows)
        q.params["path"] = path
    else:
        raise QuandleSpecError(f"unknown quandle kind {kind!r}")
    if kv:
        extra = ", ".join(sorted(kv))
        raise QuandleSpecError(f"unknown keys for {kind}: {extra}")
    return q


# -- verification ----------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    """Result of an exhaustive scan of the three quandle axioms.

    counterexamples maps a failed axiom name to the first offending
    index tuple found in scan order: (x,) for idempotency, (a1, a2, b)
    with a1 > b = a2 > b for right invertibility, (x, y, z) for
    distributivity.
    """

    idempotent: bool
    right_invertible: bool
    distributive: bool
    counterexamples: dict

    @property
    def ok(self):
        return self.idempotent and self.right_invertible and self.distributive

    def __bool__(self):
        return self.ok


def check_axioms(q):
    """Exhaustively verify the quandle axioms for q.

    Raises SizeGuardError above AXIOM_SCAN_LIMIT elements (the
    distributivity scan is cubic in |q|).
    """
    n = len(q)
    if n > AXIOM_SCAN_LIMIT:
        raise SizeGuardError(
            f"axiom scan guard: {n} > {AXIOM_SCAN_LIMIT} elements"
        )
    idx = np.arange(n, dtype=np.int64)
    ces = {}

    diag = q.op_pairs(idx, idx)
    bad = np.flatnonzero(diag != idx)
    idem = bad.size == 0
    if not idem:
        ces["idempotent"] = (int(bad[0]),)

    rinv = True
    step = max(1, _BLOCK // n)
    for lo in range(0, n, step):
        blk = idx[lo:lo + step]
        cols = q.op_pairs(idx[:, None], blk[None, :])
        srt = np.sort(cols, axis=0)
        badb = np.flatnonzero(np.any(srt != idx[:, None], axis=0))
        if badb.size:
            j = int(badb[0])
            col = cols[:, j]
            vals, first, counts = np.unique(
                col, return_index=True, return_counts=True
            )
            dupmask = counts > 1
            v = vals[dupmask][np.argmin(first[dupmask])]
            a1, a2 = np.flatnonzero(col == v)[:2]
            ces["right_invertible"] = (int(a1), int(a2), int(lo + j))
            rinv = False
            break

    dist = True
    ystep = max(1, _BLOCK // n)
    for x in range(n):
        if not dist:
            break
        xrow = q.op_pairs(x, idx)
        for ylo in range(0, n, ystep):
            yblk = idx[ylo:ylo + ystep]
            lhs = q.op_pairs(xrow[yblk][:, None], idx[None, :])
            yz = q.op_pairs(yblk[:, None], idx[None, :])
            rhs = q.op_pairs(xrow[None, :], yz)
            neq = lhs != rhs
            if np.any(neq):
                yy, zz = np.argwhere(neq)[0]
                ces["distributive"] = (x, int(ylo + yy), int(zz))
                dist = False
                break

    return AxiomReport(idem, rinv, dist, ces)


def connected_components(q, subset):
    """Orbit partition of a subquandle under its right translations.

    Parameters
    ----------
    q : FiniteQuandle
    subset : iterable of element indices
        Must be closed under op and inv_op with both arguments in the
        subset (validated; SubquandleError otherwise).

    Returns
    -------
    tuple of tuples
        Orbits of the group generated by b -> (. > b) and b -> (. >^{-1} b)
        for b in the subset, each orbit ascending, ordered by smallest
        member.
    """
    S = np.unique(np.asarray(list(subset), dtype=np.int64))
    if S.size == 0:
        raise SubquandleError("subset is empty")
    if S[0] < 0 or S[-1] >= len(q):
        raise IndexError(f"element index out of range 0..{len(q) - 1}")
    k = int(S.size)

    targets = []
    for sgn, word in ((1, ">"), (-1, ">^{-1}")):
        vals = q.op_pairs(S[:, None], S[None, :], sgn)
        pos = np.searchsorted(S, vals)
        ok = (pos < k) & (S[np.minimum(pos, k - 1)] == vals)
        if not np.all(ok):
            i, j = np.argwhere(~ok)[0]
            raise SubquandleError(
                f"subset is not a subquandle: {int(S[i])} {word} "
                f"{int(S[j])} = {int(vals[i, j])} lies outside it"
            )
        targets.append(pos)

    labels = np.arange(k)
    while True:
        new = labels.copy()
        for pos in targets:
            np.minimum(new, labels[pos].min(axis=1), out=new)
        if np.array_equal(new, labels):
            break
        labels = new
    return tuple(
        tuple(int(x) for x in S[labels == root])
        for root in np.unique(labels)
    )


def quandle_op(q, a, b, sign=1):
    """Evaluate a >^{sign} b; sign is +1/-1 or "+"/"-".

    Accepts element indices or element labels; returns an index for
    index input and a label when a is given as a label.
    """
    s = {1: 1, -1: -1, "+": 1, "-": -1}.get(sign)
    if s is None:
        raise QuandleSpecError(f"sign must be +1 or -1, got {sign!r}")
    labelled = not isinstance(a, (int, np.integer))
    ai = q.index(a) if labelled else int(a)
    bi = q.index(b) if not isinstance(b, (int, np.integer)) else int(b)
    n = len(q)
    for v in (ai, bi):
        if not 0 <= v < n:
            raise IndexError(f"element index {v} out of range 0..{n - 1}")
    res = q.op(ai, bi) if s > 0 else q.inv_op(ai, bi)
    return q.elements[res] if labelled else res
