"""Link diagrams as arc-indexed crossing relation lists.

A diagram with k arcs is a list of crossings, each stating that the
under-strand leaving the crossing is the entering under-strand acted on
by the over-strand:

    result = under_in >^{sign} over

Closed diagrams are "strict": every arc is the result of exactly one
crossing, so the relation list is a presentation of the diagram's
fundamental quandle with one relation per generator. Open tangles
(sub-diagrams produced by chunking, or parsed with "tangle": true) drop
that requirement but keep the range requirement that all arc indices
lie in 1..arc_count.

File format (JSON, UTF-8)::

    {"name": str, "arcs": int, "tangle": bool?, "crossings":
     [{"r": int, "u": int, "o": int, "s": 1|-1}, ...]}

Canonical serialization emits the keys in exactly that order with no
insignificant whitespace. A plain-text form is accepted on input, one
crossing per line, ``*`` for > and ``/`` for >^{-1}::

    c1: x2 = x3 * x1

with optional ``name:``, ``arcs:`` and ``tangle:`` header lines, and
``#`` comments.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from qie import _tables

__all__ = [
    "DiagramError",
    "LinkParseError",
    "Crossing",
    "LinkDiagram",
    "ValidationReport",
    "parse_link",
    "serialize",
    "validate",
    "gen_hopf_sum",
    "gen_allen_swenberg",
    "gen_test_link",
    "TEST_LINK_NAMES",
]


class DiagramError(Exception):
    """Invalid diagram structure or generator arguments."""


class LinkParseError(DiagramError):
    """Unparseable or invalid link file; carries line/offset when known."""

    def __init__(self, message, line=None, offset=None):
        if line is not None:
            where = f"line {line}"
            if offset is not None:
                where += f", offset {offset}"
            message = f"{where}: {message}"
        super().__init__(message)
        self.line = line
        self.offset = offset


@dataclass(frozen=True)
class Crossing:
    """One crossing relation: result = under_in >^{sign} over."""

    result: int
    under_in: int
    over: int
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DiagramError(f"crossing sign must be 1 or -1, got {self.sign!r}")
        for name in ("result", "under_in", "over"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise DiagramError(f"crossing {name} must be a positive arc index, got {v!r}")

    @property
    def arcs(self):
        """The three arc indices (result, under_in, over)."""
        return (self.result, self.under_in, self.over)


@dataclass(frozen=True)
class LinkDiagram:
    """Arc count plus crossing relations; immutable.

    arc indices are 1-based, matching file format and reports. tangle
    marks open sub-diagrams exempt from the strictness requirement.
    """

    name: str
    arc_count: int
    crossings: tuple = field(default=())
    tangle: bool = False

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        if not isinstance(self.arc_count, int) or self.arc_count < 1:
            raise DiagramError(f"arc_count must be a positive integer, got {self.arc_count!r}")
        for i, c in enumerate(self.crossings, start=1):
            if not isinstance(c, Crossing):
                raise DiagramError(f"crossing c{i} is not a Crossing")
            for arc in c.arcs:
                if arc > self.arc_count:
                    raise DiagramError(
                        f"crossing c{i} references arc {arc}, outside 1..{self.arc_count}"
                    )


@dataclass(frozen=True)
class ValidationReport:
    """Findings from diagram validation; empty findings means valid."""

    mode: str
    findings: tuple

    @property
    def ok(self):
        return not self.findings

    def __bool__(self):
        return self.ok


def validate(d, mode="strict"):
    """Validate a diagram; returns a ValidationReport, never raises.

    Strict mode requires every arc touched by a crossing to be the
    result of exactly one crossing (the closed-diagram condition; arcs
    no crossing mentions are zero-crossing circle components and are
    allowed). Lenient mode only requires the in-range arc indices
    already enforced at construction, so tangles with open ends pass.
    """
    if mode not in ("strict", "lenient"):
        raise ValueError(f"mode must be strict or lenient, got {mode!r}")
    findings = []
    if mode == "strict":
        produced = {}
        mentioned = set()
        for i, c in enumerate(d.crossings, start=1):
            produced.setdefault(c.result, []).append(i)
            mentioned.update(c.arcs)
        for arc in sorted(mentioned):
            srcs = produced.get(arc, ())
            if not srcs:
                findings.append(f"arc {arc} is never produced by a crossing")
            elif len(srcs) > 1:
                names = ", ".join(f"c{i}" for i in srcs)
                findings.append(f"arc {arc} is produced by {len(srcs)} crossings ({names})")
    return ValidationReport(mode, tuple(findings))


# -- parsing and serialization ----------------------------------------


def serialize(d):
    """Canonical JSON bytes: fixed key order, no insignificant whitespace."""
    obj = {"name": d.name, "arcs": d.arc_count}
    if d.tangle:
        obj["tangle"] = True
    obj["crossings"] = [
        {"r": c.result, "u": c.under_in, "o": c.over, "s": c.sign}
        for c in d.crossings
    ]
    return json.dumps(obj, separators=(",", ":")).encode("utf-8")


def parse_link(data, strict=None):
    """Parse a link file (JSON or plain text) into a LinkDiagram.

    Parameters
    ----------
    data : bytes or str
    strict : bool or None
        None applies the strictness requirement unless the file sets
        "tangle": true; False defers it entirely (validation can then be
        run separately for reporting).

    Raises LinkParseError with line/offset context on syntax errors, and
    on range or strictness violations naming the offending arc.
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise LinkParseError(f"not valid UTF-8: {exc}") from None
    else:
        text = data
    stripped = text.lstrip()
    if not stripped:
        raise LinkParseError("empty link file")
    if stripped.startswith("{"):
        d = _parse_json(text)
    else:
        d = _parse_text(text)
    if strict is None:
        strict = not d.tangle
    if strict:
        report = validate(d, "strict")
        if not report.ok:
            raise LinkParseError("strict-mode violation: " + "; ".join(report.findings))
    return d


def _parse_json(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LinkParseError(exc.msg, line=exc.lineno, offset=exc.colno) from None
    if not isinstance(obj, dict):
        raise LinkParseError("top-level JSON value must be an object")
    allowed = {"name", "arcs", "tangle", "crossings"}
    unknown = set(obj) - allowed
    if unknown:
        raise LinkParseError(f"unknown keys: {', '.join(sorted(unknown))}")
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise LinkParseError(f"name must be a string, got {name!r}")
    if "arcs" not in obj or isinstance(obj["arcs"], bool) or not isinstance(obj["arcs"], int):
        raise LinkParseError("arcs must be present and an integer")
    tangle = obj.get("tangle", False)
    if not isinstance(tangle, bool):
        raise LinkParseError(f"tangle must be a boolean, got {tangle!r}")
    raw = obj.get("crossings")
    if not isinstance(raw, list):
        raise LinkParseError("crossings must be present and a list")
    crossings = []
    for i, c in enumerate(raw, start=1):
        if not isinstance(c, dict) or set(c) != {"r", "u", "o", "s"}:
            raise LinkParseError(
                f"crossing c{i} must be an object with keys r, u, o, s"
            )
        for key in ("r", "u", "o", "s"):
            if isinstance(c[key], bool) or not isinstance(c[key], int):
                raise LinkParseError(f"crossing c{i}: {key} must be an integer")
        try:
            crossings.append(Crossing(c["r"], c["u"], c["o"], c["s"]))
        except DiagramError as exc:
            raise LinkParseError(f"crossing c{i}: {exc}") from None
    try:
        return LinkDiagram(name, obj["arcs"], tuple(crossings), tangle)
    except DiagramError as exc:
        raise LinkParseError(str(exc)) from None


_HEADER_RE = re.compile(r"^(name|arcs|tangle)\s*[:=]\s*(.*)$", re.IGNORECASE)
_CROSSING_TOKENS = (
    ("crossing label 'cK'", re.compile(r"c(\d+)")),
    ("':'", re.compile(r":")),
    ("arc 'xR'", re.compile(r"x(\d+)")),
    ("'='", re.compile(r"=")),
    ("arc 'xU'", re.compile(r"x(\d+)")),
    ("operator '*' or '/'", re.compile(r"([*/])")),
    ("arc 'xO'", re.compile(r"x(\d+)")),
)


def _parse_text(text):
    name = ""
    arcs = None
    tangle = False
    crossings = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        header = _HEADER_RE.match(line.strip())
        if header and not line.strip().lower().startswith("c"):
            key, val = header.group(1).lower(), header.group(2).strip()
            if key == "name":
                name = val
            elif key == "arcs":
                try:
                    arcs = int(val)
                except ValueError:
                    raise LinkParseError(f"arcs must be an integer, got {val!r}", line=ln) from None
            else:
                tangle = val.lower() in ("1", "true", "yes")
            continue
        pos = 0
        groups = []
        for desc, pat in _CROSSING_TOKENS:
            while pos < len(line) and line[pos].isspace():
                pos += 1
            mm = pat.match(line, pos)
            if not mm:
                raise LinkParseError(f"expected {desc}", line=ln, offset=pos + 1)
            groups.append(mm.group(1) if pat.groups else "")
            pos = mm.end()
        while pos < len(line) and line[pos].isspace():
            pos += 1
        if pos != len(line):
            raise LinkParseError("unexpected trailing text", line=ln, offset=pos + 1)
        _, r, u, op, o = groups[0], groups[2], groups[4], groups[5], groups[6]
        try:
            crossings.append(Crossing(int(r), int(u), int(o), 1 if op == "*" else -1))
        except DiagramError as exc:
            raise LinkParseError(str(exc), line=ln) from None
    if arcs is None:
        arcs = max((max(c.arcs) for c in crossings), default=0)
        if arcs == 0:
            raise LinkParseError("no arcs: add an 'arcs:' header or crossing lines")
    try:
        return LinkDiagram(name, arcs, tuple(crossings), tangle)
    except DiagramError as exc:
        raise LinkParseError(str(exc)) from None


# -- generators --------------------------------------------------------


def _from_rows(name, arc_count, rows):
    return LinkDiagram(
        name, arc_count, tuple(Crossing(r, u, o, s) for r, u, o, s in rows)
    )


def gen_hopf_sum():
    """The 4-arc, 4-crossing connected sum of two Hopf links."""
    return _from_rows("hopfsum", 4, _tables.HOPF_SUM_CROSSINGS)


_BLOCK_INTERIOR_LO = 48
_BLOCK_INTERIOR_HI = 85
_BLOCK_SPAN = 40


def _relabel_block_arc(arc, k, n):
    """Arc index of a block-template arc in copy k of n (k >= 2)."""
    shift = _BLOCK_SPAN * (k - 2)
    if 46 <= arc <= _BLOCK_INTERIOR_HI:
        return arc + shift
    if arc == 3:
        return 3 if k == n else 47 + _BLOCK_SPAN * (k - 1)
    if arc == 27:
        return 27 if k == n else 46 + _BLOCK_SPAN * (k - 1)
    raise DiagramError(f"unexpected arc {arc} in block template")


def gen_allen_swenberg(n, max_n=8):
    """The n-th Allen-Swenberg link as a strict diagram.

    n=0 is the connected sum of two Hopf links; n=1 and n=2 are the
    embedded 45- and 85-crossing tables; n>=3 replicates the embedded
    40-crossing tangle block, shifting its interior arcs by 40 per copy
    and chaining each copy's two closing arcs to the next copy's
    connector arcs (the last copy closes the diagram on arcs 3 and 27).
    The diagram has 45 + 40(n-1) arcs and as many crossings.
    """
    if not isinstance(n, int) or n < 0:
        raise DiagramError(f"n must be a nonnegative integer, got {n!r}")
    if n > max_n:
        raise DiagramError(f"n={n} exceeds the generator guard max_n={max_n}")
    if n == 0:
        return gen_hopf_sum()
    if n == 1:
        return _from_rows("aslink1", 45, _tables.ASLINK1_CROSSINGS)
    rows = list(_tables.ASLINK2_CROSSINGS[:45])
    for k in range(2, n + 1):
        for r, u, o, s in _tables.ASLINK_BLOCK:
            rows.append((
                _relabel_block_arc(r, k, n),
                _relabel_block_arc(u, k, n),
                _relabel_block_arc(o, k, n),
                s,
            ))
    return _from_rows(f"aslink{n}", 45 + _BLOCK_SPAN * (n - 1), rows)


_TEST_LINKS = {
    "unknot": (1, ()),
    "hopf": (2, ((1, 1, 2, 1), (2, 2, 1, 1))),
    "trefoil": (3, ((2, 1, 3, 1), (3, 2, 1, 1), (1, 3, 2, 1))),
    "figure8": (4, ((4, 2, 1, 1), (2, 1, 3, -1), (1, 3, 4, 1), (3, 4, 2, -1))),
    "trefoil_r1": (4, ((2, 1, 3, 1), (3, 2, 1, 1), (1, 4, 2, 1), (4, 3, 3, 1))),
}

TEST_LINK_NAMES = tuple(sorted(_TEST_LINKS))


def gen_test_link(name):
    """Standard small fixture diagrams.

    Known names: unknot, hopf, trefoil, figure8, and trefoil_r1 (the
    trefoil with one extra Reidemeister-I kink, same knot type).
    """
    try:
        arcs, rows = _TEST_LINKS[name]
    except KeyError:
        known = ", ".join(TEST_LINK_NAMES)
        raise DiagramError(f"unknown test link {name!r}; known: {known}") from None
    return _from_rows(name, arcs, rows)
