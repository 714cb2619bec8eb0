"""Invariants derived from coloring sets.

The counting invariant is |Hom(Q(L), T)|. The enhanced polynomial
refines it by the image size of each coloring:

    phi_E(L, T) = sum over f in Hom(Q(L), T) of q^|Im(f)|

so the coefficient of q^k counts the colorings using exactly k distinct
quandle elements, and the coefficient sum recovers the counting
invariant. Two links whose polynomials differ are distinct even when
their counting invariants agree.

Also provided: a census of colorings grouped by the partition of arcs
into like-colored blocks, and the block-structure extension that maps
colorings of the first Allen-Swenberg link onto colorings of the n-th.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qie import _tables
from qie.diagram import gen_allen_swenberg
from qie.solver import check_coloring

__all__ = [
    "EnhancedPolynomial",
    "ColorPartition",
    "DistinguishReport",
    "InvalidColoringError",
    "ExtensionError",
    "counting_invariant",
    "enhanced_polynomial",
    "partition_census",
    "distinguishes",
    "extend_coloring",
]


class InvalidColoringError(ValueError):
    """A supplied coloring violates a crossing relation."""


class ExtensionError(RuntimeError):
    """A block-structure extension failed re-verification."""


class EnhancedPolynomial:
    """A polynomial in q with nonnegative integer coefficients.

    Immutable and hashable. Terms with zero coefficient are dropped;
    exponents are image sizes, so they are positive integers.
    """

    __slots__ = ("_items",)

    def __init__(self, terms=()):
        items = []
        for e, c in dict(terms).items():
            e, c = int(e), int(c)
            if c == 0:
                continue
            if e < 1 or c < 0:
                raise ValueError(f"bad term {c}q^{e}: need exponent >= 1, coefficient >= 0")
            items.append((e, c))
        object.__setattr__(self, "_items", tuple(sorted(items)))

    def __setattr__(self, name, value):
        raise AttributeError("EnhancedPolynomial is immutable")

    @property
    def terms(self):
        """Exponent -> coefficient mapping, ascending exponents."""
        return dict(self._items)

    def items(self):
        return self._items

    @property
    def degree(self):
        return self._items[-1][0] if self._items else 0

    @property
    def total(self):
        """Sum of coefficients: the plain counting invariant."""
        return sum(c for _, c in self._items)

    def coefficient(self, e):
        return dict(self._items).get(int(e), 0)

    def __eq__(self, other):
        if not isinstance(other, EnhancedPolynomial):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __bool__(self):
        return bool(self._items)

    def __str__(self):
        if not self._items:
            return "0"
        return " + ".join(f"{c}q^{e}" for e, c in self._items)

    def __repr__(self):
        return f"EnhancedPolynomial({dict(self._items)!r})"

    def to_json_dict(self):
        """JSON-ready {str(exponent): coefficient} in ascending order."""
        return {str(e): c for e, c in self._items}

    @classmethod
    def from_json_dict(cls, obj):
        return cls({int(e): int(c) for e, c in obj.items()})


@dataclass(frozen=True)
class ColorPartition:
    """Partition of arcs 1..n into like-colored blocks.

    Canonical form: members ascending within each block, blocks ordered
    by least member; the constructor rejects anything else.
    """

    blocks: tuple

    def __post_init__(self):
        seen = set()
        prev_lead = 0
        for b in self.blocks:
            if not isinstance(b, tuple) or not b:
                raise ValueError("blocks must be nonempty tuples")
            if list(b) != sorted(set(b)):
                raise ValueError(f"block {b} is not strictly ascending")
            if b[0] <= prev_lead:
                raise ValueError("blocks must be ordered by least member")
            if seen & set(b):
                raise ValueError("blocks must be disjoint")
            seen |= set(b)
            prev_lead = b[0]
        if seen and sorted(seen) != list(range(1, max(seen) + 1)):
            raise ValueError("blocks must cover arcs 1..n with no gaps")

    @classmethod
    def from_coloring(cls, colors):
        """Group arc indices (1-based) by color value."""
        groups = {}
        for i, v in enumerate(colors, start=1):
            groups.setdefault(int(v), []).append(i)
        blocks = tuple(
            tuple(g) for g in sorted(groups.values(), key=lambda g: g[0])
        )
        return cls(blocks)

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return "|".join("=".join(str(a) for a in b) for b in self.blocks)


@dataclass(frozen=True)
class DistinguishReport:
    """Whether two enhanced polynomials (and their totals) differ.

    Truthy exactly when the enhanced invariant distinguishes; counting
    records whether the coefficient sums alone would have.
    """

    enhanced: bool
    counting: bool

    def __bool__(self):
        return self.enhanced


def counting_invariant(hom):
    """|Hom(Q(L), T)|: the number of colorings."""
    return len(hom)


def _image_sizes(colorings):
    """Per-row count of distinct values, vectorized by row sort."""
    if colorings.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    s = np.sort(colorings, axis=1)
    return (np.diff(s, axis=1) != 0).sum(axis=1) + 1


def enhanced_polynomial(hom):
    """phi_E(L, T) = sum of q^|Im(f)| over the coloring set."""
    sizes = _image_sizes(hom.colorings)
    exps, counts = np.unique(sizes, return_counts=True)
    return EnhancedPolynomial(
        {int(e): int(c) for e, c in zip(exps, counts)}
    )


def partition_census(hom):
    """Colorings grouped by like-colored arc partition.

    Returns {image_size: ((ColorPartition, multiplicity), ...)} with
    image sizes ascending and partitions in canonical block order; the
    multiplicities under each image size sum to that coefficient of the
    enhanced polynomial.
    """
    counts = {}
    for row in hom.colorings.tolist():
        seen = {}
        sig = tuple(seen.setdefault(v, len(seen)) for v in row)
        counts[sig] = counts.get(sig, 0) + 1
    grouped = {}
    for sig, mult in counts.items():
        part = ColorPartition.from_coloring(sig)
        k = len(part)
        grouped.setdefault(k, []).append((part, mult))
    return {
        k: tuple(sorted(grouped[k], key=lambda pm: pm[0].blocks))
        for k in sorted(grouped)
    }


def distinguishes(a, b):
    """Compare two enhanced polynomials as link invariants."""
    if not isinstance(a, EnhancedPolynomial) or not isinstance(b, EnhancedPolynomial):
        raise TypeError("distinguishes expects two EnhancedPolynomial values")
    return DistinguishReport(enhanced=a != b, counting=a.total != b.total)


def extend_coloring(f1, n, q):
    """Map a coloring of the first Allen-Swenberg link to the n-th.

    Copies f1 onto arcs 1..45 and colors each replicated block of the
    n-th diagram through the embedded block correspondence, every block
    receiving the colors its template arcs carry under f1 (the two
    connector arcs repeat the colors of arcs 5 and 26, which equal the
    colors of arcs 3 and 27 in every valid symplectic coloring). The
    result is verified against every crossing of the target diagram and
    the map is injective with |Im| preserved, giving
    |Hom(L_n)| >= |Hom(L_1)| for all n >= 2.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    f = np.asarray(f1, dtype=np.int16)
    if f.ndim != 1 or f.shape[0] != 45:
        raise ValueError(f"f1 must assign all 45 arcs, got shape {f.shape}")
    l1 = gen_allen_swenberg(1)
    bad = check_coloring(l1, q, f)
    if bad >= 0:
        raise InvalidColoringError(
            f"f1 violates crossing c{bad + 1} of the 45-arc diagram"
        )
    ln = gen_allen_swenberg(n, max_n=max(8, n))
    out = np.empty(ln.arc_count, dtype=np.int16)
    out[:45] = f
    block_src = np.asarray(_tables.EXTENSION_SOURCE[45:], dtype=np.int64) - 1
    for k in range(2, n + 1):
        lo = 45 + 40 * (k - 2)
        out[lo:lo + 40] = f[block_src]
    bad = check_coloring(ln, q, out)
    if bad >= 0:
        raise ExtensionError(
            f"extension violates crossing c{bad + 1} of {ln.name}"
        )
    return out
