"""Shared fixtures: quandles, diagrams, and cached coloring sets."""

import pytest

from qie import algebra, diagram, solver


@pytest.fixture(scope="session")
def links():
    """Every diagram the suite reuses, keyed by generator name."""
    out = {name: diagram.gen_test_link(name) for name in diagram.TEST_LINK_NAMES}
    out["hopfsum"] = diagram.gen_hopf_sum()
    out["aslink1"] = diagram.gen_allen_swenberg(1)
    out["aslink2"] = diagram.gen_allen_swenberg(2)
    out["aslink3"] = diagram.gen_allen_swenberg(3)
    return out


class _Cache:
    """Session cache of built quandles and solved coloring sets."""

    def __init__(self, links):
        self._links = links
        self._quandles = {}
        self._homs = {}

    def quandle(self, spec):
        if spec not in self._quandles:
            self._quandles[spec] = algebra.build_quandle(spec)
        return self._quandles[spec]

    def hom(self, link_name, spec):
        key = (link_name, spec)
        if key not in self._homs:
            self._homs[key] = solver.solve(
                self._links[link_name], self.quandle(spec)
            )
        return self._homs[key]


@pytest.fixture(scope="session")
def cache(links):
    """cache.quandle(spec) and cache.hom(link_name, spec), solved once."""
    return _Cache(links)
