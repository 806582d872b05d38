from fractions import Fraction

import pytest

from defcol.coloring import Coloring, is_acyclic
from defcol.coloring_search import search_coloring
from defcol.defect import (
    DefectPreconditionError,
    DefectReport,
    SearchBudgetExhausted,
    acyclic_five_coloring,
    defect_bounds,
    four_color_bound,
    reduce_to_four,
    three_color_bound,
    triangulate_for_defect,
    verify_defect_report,
)
from defcol.instances.generators import double_wheel, icosahedron, k4, random_triangulation
from defcol.plane_graph import GraphError, PlaneGraph


def test_bounds_are_exact_fractions():
    assert four_color_bound(12) == Fraction(24, 5)
    assert three_color_bound(12) == Fraction(57, 5)
    assert four_color_bound(4) == 0


def test_octahedron_needs_exactly_one_deletion(octa):
    four, three = defect_bounds(octa)
    assert four.size == 1
    assert four.integer_bound == 1
    for report in (four, three):
        assert verify_defect_report(octa, report).ok
    assert set(four.deleted) <= set(three.deleted)


def test_k4_reports():
    four, three = defect_bounds(k4())
    assert four.size == 0
    assert three.size == 1
    assert three.met


@pytest.mark.parametrize("graph", [
    pytest.param(icosahedron(), id="icosahedron"),
    pytest.param(double_wheel(9), id="double-wheel-9"),
    pytest.param(random_triangulation(14, seed=2), id="random-14"),
])
def test_reports_verify(graph):
    four, three = defect_bounds(graph, threads=2, parallel_depth=2)
    assert (four.k, three.k) == (4, 3)
    for report in (four, three):
        checks = verify_defect_report(graph, report)
        assert checks.ok, checks.summary()
        assert report.size <= report.integer_bound


def test_non_triangulation_is_completed_first():
    G = PlaneGraph.from_edges(range(6), [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
    T, added = triangulate_for_defect(G)
    assert T.m == 3 * 6 - 6
    assert len(added) == T.m - G.m
    four, three = defect_bounds(G)
    for report in (four, three):
        assert set(report.deleted) <= set(G.edges)
        assert verify_defect_report(G, report).ok


def test_triangulating_needs_three_vertices():
    with pytest.raises(GraphError):
        triangulate_for_defect(PlaneGraph.from_edges(range(2), [(0, 1)]))


def test_supplied_coloring_must_be_acyclic(octa, octa_phi3):
    with pytest.raises(DefectPreconditionError):
        defect_bounds(octa, five_coloring=octa_phi3)
    with pytest.raises(DefectPreconditionError):
        defect_bounds(octa, source="supplied")


def test_explicit_search_ignores_a_supplied_coloring(octa, octa_phi3):
    phi5 = acyclic_five_coloring(octa, source="search", supplied=octa_phi3)
    assert is_acyclic(octa, phi5)
    with pytest.raises(DefectPreconditionError):
        acyclic_five_coloring(octa, source="supplied", supplied=octa_phi3)
    four, _ = defect_bounds(octa, five_coloring=octa_phi3, source="search")
    assert four.source == "search"


def test_supplied_acyclic_coloring_is_used(octa):
    phi5 = search_coloring(octa, 5, require_acyclic=True).coloring
    report = reduce_to_four(octa, phi5)
    assert report.source == "supplied"
    remaining = octa.without_edges(report.deleted)
    assert is_acyclic(remaining, report.coloring)
    assert max(report.coloring.used) <= 4


def test_proper_then_reject_source(octa):
    four, _ = defect_bounds(octa, source="proper-then-reject")
    assert four.source == "proper-then-reject"
    assert verify_defect_report(octa, four).ok


def test_search_budget_is_reported(octa):
    with pytest.raises(SearchBudgetExhausted):
        defect_bounds(octa, node_budget=1)


def test_verification_catches_a_bad_coloring(octa):
    four, _ = defect_bounds(octa)
    bad = Coloring.from_dict({v: 1 for v in octa.vertices}, k=4)
    report = verify_defect_report(octa, DefectReport(k=4, deleted=four.deleted, coloring=bad, bound=four.bound,
                                                     source=four.source))
    assert not report.passed("proper")
    assert not report.ok
