import pytest

from defcol.coloring import is_acyclic, is_proper
from defcol.coloring_search import ColoringBacktracker, SearchStatus, iter_colorings, search_coloring, search_order
from defcol.instances.generators import (
    catalog_small,
    double_wheel,
    even_double_wheel,
    icosahedron,
    k3,
    random_triangulation,
    stacked_chain,
)


def test_search_order_is_breadth_first(octa):
    order = search_order(octa)
    assert order[0] == 0
    assert sorted(order) == list(octa.vertices)
    assert order[1:5] == [1, 3, 4, 5]


def test_symmetry_breaking_gives_one_coloring_per_orbit(octa):
    assert len(list(iter_colorings(octa, 3))) == 1
    assert len(list(iter_colorings(k3(), 3))) == 1
    assert len(list(iter_colorings(k3(), 3, break_symmetry=False))) == 6


def test_stacked_chain_colorings():
    # with four colors every stacked vertex is forced by its three neighbours
    G = stacked_chain(3)
    colorings = list(iter_colorings(G, 4))
    assert len(colorings) == 1
    assert is_proper(G, colorings[0])
    five = list(iter_colorings(G, 5))
    assert len({phi.canonical() for phi in five}) == len(five) > 1


def test_no_coloring(k4_rainbow):
    G, _ = k4_rainbow
    result = search_coloring(G, 3)
    assert result.status == SearchStatus.NONE
    assert result.coloring is None
    assert list(iter_colorings(G, 3)) == []


def test_octahedron_has_no_acyclic_four_coloring(octa):
    assert search_coloring(octa, 4, require_acyclic=True).status == SearchStatus.NONE
    acyclic = search_coloring(octa, 5, require_acyclic=True)
    assert acyclic.found
    assert is_acyclic(octa, acyclic.coloring)


def test_budget_exhausted_is_not_none(octa):
    result = search_coloring(octa, 4, require_acyclic=True, node_budget=3)
    assert result.status == SearchStatus.BUDGET_EXHAUSTED
    assert not result.found


@pytest.mark.parametrize("threads", [1, 3])
def test_parallel_search_matches_sequential(threads):
    G = icosahedron()
    result = search_coloring(G, 4, threads=threads, parallel_depth=2)
    assert result.found
    assert is_proper(G, result.coloring)
    assert result.coloring == search_coloring(G, 4).coloring


def test_acyclic_enumeration_filters_cycles(octa):
    for phi in iter_colorings(octa, 5, require_acyclic=True):
        assert is_acyclic(octa, phi)


def test_palette_must_be_positive(octa):
    with pytest.raises(ValueError):
        ColoringBacktracker(octa, 0)


@pytest.mark.parametrize("graph", catalog_small() + [double_wheel(7), even_double_wheel(8), random_triangulation(8, seed=2)],
                         ids=lambda G: G.name)
@pytest.mark.parametrize("k", [3, 4, 5])
def test_acyclic_search_agrees_with_filtering(graph, k):
    filtered = [phi for phi in iter_colorings(graph, k) if is_acyclic(graph, phi)]
    pruned = list(iter_colorings(graph, k, require_acyclic=True))
    assert {phi.canonical() for phi in pruned} == {phi.canonical() for phi in filtered}
    assert search_coloring(graph, k, require_acyclic=True).found == bool(filtered)


def test_parallel_search_splits_the_node_budget(octa):
    result = search_coloring(octa, 4, require_acyclic=True, node_budget=3, threads=2, parallel_depth=2)
    assert result.status == SearchStatus.BUDGET_EXHAUSTED
    assert result.nodes <= 4


def test_parallel_search_reports_none(octa):
    result = search_coloring(octa, 4, require_acyclic=True, threads=2, parallel_depth=2)
    assert result.status == SearchStatus.NONE
