"""Quandle coloring invariants for knot and link diagrams.

Builds finite quandles (symplectic, Takasaki, Alexander, trivial,
table), parses and generates link diagrams, computes the coloring set
Hom(Q(L), T) by a divide-and-conquer join solver with a brute-force
oracle, and derives the counting invariant and the enhanced polynomial
phi_E(L, T) = sum over colorings of q^|image|, the invariant that
separates the Allen-Swenberg links from the connected sum of two Hopf
links when plain counting cannot.
"""

from qie.algebra import (
    AxiomReport,
    FieldElement,
    FiniteQuandle,
    QuandleError,
    QuandleSpecError,
    SizeGuardError,
    SubquandleError,
    SymplecticForm,
    build_quandle,
    check_axioms,
    connected_components,
    is_prime,
    quandle_op,
)
from qie.diagram import (
    Crossing,
    DiagramError,
    LinkDiagram,
    LinkParseError,
    TEST_LINK_NAMES,
    ValidationReport,
    gen_allen_swenberg,
    gen_hopf_sum,
    gen_test_link,
    parse_link,
    serialize,
    validate,
)
from qie.invariant import (
    ColorPartition,
    DistinguishReport,
    EnhancedPolynomial,
    ExtensionError,
    InvalidColoringError,
    counting_invariant,
    distinguishes,
    enhanced_polynomial,
    extend_coloring,
    partition_census,
)
from qie.solver import (
    DisconnectedDiagramWarning,
    DisjointJoinWarning,
    GuardExceeded,
    HomSet,
    PartialSolutionSet,
    RowCapExceeded,
    SolverError,
    brute_force_solve,
    check_coloring,
    enumerate_chunk,
    join_partial,
    partition_chunks,
    solve,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    "AxiomReport",
    "FieldElement",
    "FiniteQuandle",
    "QuandleError",
    "QuandleSpecError",
    "SizeGuardError",
    "SubquandleError",
    "SymplecticForm",
    "build_quandle",
    "check_axioms",
    "connected_components",
    "is_prime",
    "quandle_op",
    "Crossing",
    "DiagramError",
    "LinkDiagram",
    "LinkParseError",
    "TEST_LINK_NAMES",
    "ValidationReport",
    "gen_allen_swenberg",
    "gen_hopf_sum",
    "gen_test_link",
    "parse_link",
    "serialize",
    "validate",
    "ColorPartition",
    "DistinguishReport",
    "EnhancedPolynomial",
    "ExtensionError",
    "InvalidColoringError",
    "counting_invariant",
    "distinguishes",
    "enhanced_polynomial",
    "extend_coloring",
    "partition_census",
    "DisconnectedDiagramWarning",
    "DisjointJoinWarning",
    "GuardExceeded",
    "HomSet",
    "PartialSolutionSet",
    "RowCapExceeded",
    "SolverError",
    "brute_force_solve",
    "check_coloring",
    "enumerate_chunk",
    "join_partial",
    "partition_chunks",
    "solve",
]
