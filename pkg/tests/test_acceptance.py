"""Acceptance gate: the twelve pinned results, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v`` to see one line per
criterion. Every numeric pin here was cross-checked against an
independent implementation before being frozen; the one pinned total
that cannot hold (criterion 4's 13125) is kept as a strict expected
failure with the contradiction spelled out in its reason.
"""

import json
import time

import numpy as np
import pytest

from qie import _tables
from qie.algebra import build_quandle, check_axioms, connected_components
from qie.cli import main as cli_main
from qie.diagram import (
    Crossing,
    LinkDiagram,
    gen_allen_swenberg,
    gen_hopf_sum,
    serialize,
    validate,
)
from qie.invariant import (
    EnhancedPolynomial,
    distinguishes,
    enhanced_polynomial,
    extend_coloring,
    partition_census,
)
from qie.solver import brute_force_solve, check_coloring, solve

Z2 = "symplectic:p=2,n=1"
Z3 = "symplectic:p=3,n=1"
Z5 = "symplectic:p=5,n=1"

HOPFSUM_Z5 = EnhancedPolynomial({1: 25, 2: 360, 3: 840})
ASLINK_Z5 = EnhancedPolynomial({1: 25, 2: 360, 3: 360, 21: 360, 22: 120})
HOPFSUM_Z2 = EnhancedPolynomial({1: 4, 2: 18, 3: 6})
ASLINK_Z2 = EnhancedPolynomial({1: 4, 2: 18, 4: 6})
HOPFSUM_Z3 = EnhancedPolynomial({1: 9, 2: 72, 3: 72})
ASLINK_Z3 = EnhancedPolynomial({1: 9, 2: 72, 3: 24, 9: 48})


def test_criterion_01_hopf_sum_over_z5(links, cache):
    """|Hom(H)| = 1225 and phi_E = 25q + 360q^2 + 840q^3, both methods."""
    q = cache.quandle(Z5)
    t0 = time.perf_counter()
    dc = solve(links["hopfsum"], q)
    brute = brute_force_solve(links["hopfsum"], q)
    elapsed = time.perf_counter() - t0
    assert len(dc) == 1225
    assert enhanced_polynomial(dc) == HOPFSUM_Z5
    assert dc.as_set() == brute.as_set()
    assert enhanced_polynomial(brute) == HOPFSUM_Z5
    assert elapsed < 10


def test_criterion_02_first_link_over_z5(links, cache):
    """|Hom(L1)| = 1225 and phi_E gains q^21/q^22 terms, dc method."""
    q = cache.quandle(Z5)
    t0 = time.perf_counter()
    hom = solve(links["aslink1"], q)
    elapsed = time.perf_counter() - t0
    assert len(hom) == 1225
    assert enhanced_polynomial(hom) == ASLINK_Z5
    assert elapsed < 300


def test_criterion_03_z2_z3_table(links, cache):
    """Exact phi_E for H and L1 over the 4- and 9-element quandles."""
    t0 = time.perf_counter()
    results = {
        (name, spec): enhanced_polynomial(solve(links[name], cache.quandle(spec)))
        for name in ("hopfsum", "aslink1")
        for spec in (Z2, Z3)
    }
    elapsed = time.perf_counter() - t0
    assert results[("hopfsum", Z2)] == HOPFSUM_Z2
    assert results[("aslink1", Z2)] == ASLINK_Z2
    assert results[("hopfsum", Z3)] == HOPFSUM_Z3
    assert results[("aslink1", Z3)] == ASLINK_Z3
    assert elapsed < 60


def test_criterion_04_second_link_over_z5(links, cache):
    """L2 matches L1 on every exponent below 25; the q^25 stratum is
    exactly 100 partitions of 120 colorings each, so the coefficient is
    12000 and the total 13225 (coefficient-sum consistent)."""
    q = cache.quandle(Z5)
    t0 = time.perf_counter()
    hom = solve(links["aslink2"], q)
    elapsed = time.perf_counter() - t0
    poly = enhanced_polynomial(hom)
    low = {e: c for e, c in poly.items() if e < 25}
    assert low == ASLINK_Z5.terms
    assert poly.coefficient(25) == poly.total - ASLINK_Z5.total == 12000
    census = partition_census(hom)
    full = census[25]
    assert len(full) == 100
    assert all(mult == 120 for _, mult in full)
    assert sum(mult for _, mult in full) == poly.coefficient(25)
    assert len(hom) == 13225
    assert elapsed < 1800


@pytest.mark.xfail(
    strict=True,
    reason=(
        "pinned total |Hom(L2, Z5 symplectic)| = 13125 is unattainable: it "
        "needs 13125 - 1225 = 11900 full-image colorings, but the quandle's "
        "automorphism group (order 120) acts freely on full-image colorings, "
        "so that stratum is a multiple of 120 - and the same criterion's "
        "census pin of exactly 100 image-25 partitions forces 100 * 120 = "
        "12000, giving 13225. Computed value confirmed by an independent "
        "implementation; analysis: /root/notes/decisions.md, entry D4."
    ),
)
def test_criterion_04_pinned_total_13125(cache):
    """The literal pinned count for L2 over Z5, kept as an honest failure."""
    assert len(cache.hom("aslink2", Z5)) == 13125


def test_criterion_05_z2_z3_verdicts_for_second_link(cache):
    """L2 is distinguished from H but not from L1 over Z2 and Z3."""
    for spec, hopf_poly in ((Z2, HOPFSUM_Z2), (Z3, HOPFSUM_Z3)):
        p_h = enhanced_polynomial(cache.hom("hopfsum", spec))
        p_1 = enhanced_polynomial(cache.hom("aslink1", spec))
        p_2 = enhanced_polynomial(cache.hom("aslink2", spec))
        assert p_h == hopf_poly
        assert distinguishes(p_2, p_h).enhanced
        assert not distinguishes(p_2, p_1).enhanced
        assert p_1 == p_2


def test_criterion_06_solver_agrees_with_brute_force(links, cache):
    """Identical coloring sets from both methods across the fixture grid."""
    t0 = time.perf_counter()
    grid = [("hopfsum", spec) for spec in (Z2, Z3, Z5)] + [
        (name, spec)
        for name in ("trefoil", "figure8", "hopf", "unknot")
        for spec in (Z2, Z3, "takasaki:n=3", "takasaki:n=5")
    ]
    for name, spec in grid:
        q = cache.quandle(spec)
        a = solve(links[name], q)
        b = brute_force_solve(links[name], q)
        assert a.as_set() == b.as_set(), (name, spec)
    assert time.perf_counter() - t0 < 120


def test_criterion_07_forced_relations(cache):
    """Arc equalities every symplectic Z5 coloring must satisfy."""
    h = cache.hom("hopfsum", Z5).colorings
    assert (h[:, 1] == h[:, 2]).all()  # f(x2) = f(x3)
    l1 = cache.hom("aslink1", Z5).colorings
    assert (l1[:, 0] == l1[:, 1]).all()  # f(x1) = f(x2)
    assert (l1[:, 2] == l1[:, 3]).all()  # f(x3) = f(x4)
    assert (l1[:, 3] == l1[:, 4]).all()  # f(x4) = f(x5)
    assert (l1[:, 25] == l1[:, 26]).all()  # f(x26) = f(x27)


def test_criterion_08_coloring_extension(links, cache):
    """Every L1-coloring extends to a distinct valid L2-coloring with the
    same image, over Z5, Z2, and Z3; three-copy spot check over Z2."""
    for spec in (Z5, Z2, Z3):
        q = cache.quandle(spec)
        hom = cache.hom("aslink1", spec)
        target = cache.hom("aslink2", spec).as_set()
        images = set()
        for f1 in hom.colorings:
            ext = extend_coloring(f1, 2, q)
            t = tuple(ext.tolist())
            assert t in target
            assert len(set(t)) == len(set(f1.tolist()))
            images.add(t)
        assert len(images) == len(hom)
    q2 = cache.quandle(Z2)
    for f1 in cache.hom("aslink1", Z2).colorings:
        ext3 = extend_coloring(f1, 3, q2)
        assert check_coloring(links["aslink3"], q2, ext3) == -1


def test_criterion_09_connectivity_and_axioms():
    """Nonzero vectors of symplectic (Z_p)^2 form one orbit, p in
    {2,3,5,7}; the axiom checker passes every built quandle kind."""
    for p in (2, 3, 5, 7):
        q = build_quandle(f"symplectic:p={p},n=1")
        zero = q.elements[0]
        nonzero = [i for i, e in enumerate(q.elements) if e != zero]
        orbits = connected_components(q, nonzero)
        assert len(orbits) == 1
        assert len(orbits[0]) == p * p - 1
    kinds = [
        "symplectic:p=5,n=1",
        "symplectic:p=3,dim=4",
        "takasaki:n=6",
        "alexander:n=7,t=3",
        "trivial:size=9",
    ]
    for spec in kinds:
        assert check_axioms(build_quandle(spec)).ok, spec
    table = build_quandle("takasaki:n=5").tables()[0].tolist()
    from qie.algebra import FiniteQuandle

    assert check_axioms(FiniteQuandle.from_table(table)).ok


def _arc_classes(d):
    """Union-find over arcs, joining each crossing's outgoing and
    incoming under-arc; class count = |T|-exponent for trivial T."""
    parent = list(range(d.arc_count + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in d.crossings:
        a, b = find(c.result), find(c.under_in)
        if a != b:
            parent[a] = b
    return len({find(a) for a in range(1, d.arc_count + 1)})


def test_criterion_10_form_matrix_independence(links, cache):
    """phi_E unchanged for every nonzero form scale a; the zero form
    collapses to the trivial quandle, whose counts match a union-find
    oracle on every fixture."""
    h_polys = set()
    l1_polys = set()
    for a in (1, 2, 3, 4):
        q = build_quandle(f"symplectic:p=5,a={a}")
        h_polys.add(enhanced_polynomial(solve(links["hopfsum"], q)))
        l1_polys.add(enhanced_polynomial(solve(links["aslink1"], q)))
    assert h_polys == {HOPFSUM_Z5}
    assert l1_polys == {ASLINK_Z5}

    degenerate = build_quandle("symplectic:p=5,a=0")
    trivial = build_quandle("trivial:size=25")
    assert np.array_equal(degenerate.tables()[0], trivial.tables()[0])
    for name in ("unknot", "hopf", "trefoil", "figure8", "hopfsum", "aslink1"):
        d = links[name]
        want = 25 ** _arc_classes(d)
        assert len(solve(d, degenerate)) == want, name
        small = build_quandle("trivial:size=3")
        assert len(solve(d, small)) == 3 ** _arc_classes(d), name


def test_criterion_11_generator_fidelity(links):
    """Generated diagrams byte-match the embedded crossing tables after
    canonical serialization; the replicated three-copy diagram is
    strict-valid at full size."""
    embedded1 = LinkDiagram(
        "aslink1", 45, tuple(Crossing(*row) for row in _tables.ASLINK1_CROSSINGS)
    )
    embedded2 = LinkDiagram(
        "aslink2", 85, tuple(Crossing(*row) for row in _tables.ASLINK2_CROSSINGS)
    )
    assert serialize(gen_allen_swenberg(1)) == serialize(embedded1)
    assert serialize(gen_allen_swenberg(2)) == serialize(embedded2)
    assert gen_allen_swenberg(0) == gen_hopf_sum()
    l3 = links["aslink3"]
    assert len(l3.crossings) == 125 and l3.arc_count == 125
    assert validate(l3, "strict").ok


def test_criterion_12_byte_deterministic_reports(capsys):
    """CLI reports for the criterion 1-4 fixtures are byte-identical
    across repeated runs and worker counts."""
    fixtures = [
        ("hopfsum", Z5, ["--census"]),
        ("aslink:1", Z5, []),
        ("aslink:2", Z5, []),
        ("hopfsum", Z2, []),
        ("aslink:1", Z2, []),
        ("hopfsum", Z3, []),
        ("aslink:1", Z3, []),
    ]
    for gen, spec, extra in fixtures:
        outs = set()
        runs = [("1",), ("1",), ("2",), ("8",)]
        for (threads,) in runs:
            rc = cli_main(
                ["solve", "--gen", gen, "--quandle", spec, "--format", "json",
                 "--threads", threads] + extra
            )
            captured = capsys.readouterr()
            assert rc == 0
            outs.add(captured.out)
        assert len(outs) == 1, (gen, spec)
        doc = json.loads(outs.pop())
        assert "threads" not in doc["settings"]
