import random

import pytest

from defcol.coloring import (
    Coloring,
    ColoringError,
    ImproperColoringError,
    PartialColoringError,
    apex_recoloring,
    bichromatic_edges,
    bichromatic_subgraph,
    bichromatic_two_connectivity,
    eulerian_three_coloring,
    is_acyclic,
    is_proper,
    random_proper_coloring,
    two_colored_cycle,
)
from defcol.coloring_search import iter_colorings
from defcol.instances.generators import even_double_wheel, icosahedron, octahedron


def test_coloring_rejects_colors_outside_palette():
    with pytest.raises(ColoringError):
        Coloring(assignment={0: 0}, k=3)
    with pytest.raises(ColoringError):
        Coloring(assignment={0: 4}, k=3)


def test_canonical_form_ignores_color_names():
    phi = Coloring.from_dict({0: 3, 1: 1, 2: 3})
    assert phi.canonical() == (1, 2, 1)
    assert phi.permuted({1: 2, 3: 1}).canonical() == phi.canonical()


def test_eulerian_three_coloring_of_octahedron(octa, octa_phi3):
    assert is_proper(octa, octa_phi3)
    assert octa_phi3.used == frozenset({1, 2, 3})
    # antipodal vertices share a color
    for a, b in ((0, 2), (1, 3), (4, 5)):
        assert octa_phi3[a] == octa_phi3[b]


def test_eulerian_three_coloring_needs_even_degrees(dw7):
    assert eulerian_three_coloring(dw7) is None


def test_eulerian_three_coloring_is_unique(edw8):
    phi = eulerian_three_coloring(edw8)
    assert is_proper(edw8, phi)
    assert len(phi.used) == 3
    # rim 0..5 alternates, both hubs share the third color
    assert phi[6] == phi[7]
    assert {phi[v] for v in range(6)} == {1, 2, 3} - {phi[6]}


def test_apex_recoloring(octa, octa_phi3):
    phi = apex_recoloring(octa, octa_phi3, 4)
    assert phi[4] == 4
    assert phi.k == 4
    assert is_proper(octa, phi)
    assert all(phi[v] == octa_phi3[v] for v in octa.vertices if v != 4)
    with pytest.raises(ColoringError):
        apex_recoloring(octa, phi, 0)


def test_two_colored_cycles(octa, octa_phi3, k4_rainbow):
    cycle = two_colored_cycle(octa, octa_phi3)
    assert cycle is not None
    assert len({octa_phi3[v] for v in cycle}) == 2
    assert not is_acyclic(octa, octa_phi3)
    G, phi = k4_rainbow
    assert is_acyclic(G, phi)


def test_bichromatic_subgraphs_of_octahedron(octa, octa_phi3):
    edges = bichromatic_edges(octa, octa_phi3)
    assert sorted(len(pair_edges) for pair_edges in edges.values()) == [4, 4, 4]
    assert all(bichromatic_two_connectivity(octa, octa_phi3).values())
    graph = bichromatic_subgraph(octa, octa_phi3, 1, 2)
    assert graph.number_of_nodes() == 4
    with pytest.raises(ColoringError):
        bichromatic_subgraph(octa, octa_phi3, 1, 1)


def test_improper_and_partial_colorings(octa):
    with pytest.raises(PartialColoringError):
        is_proper(octa, Coloring.from_dict({0: 1}))
    improper = Coloring.from_dict({v: 1 for v in octa.vertices})
    assert not is_proper(octa, improper)
    with pytest.raises(ImproperColoringError):
        two_colored_cycle(octa, improper)


def test_random_proper_coloring_is_seeded():
    G = icosahedron()
    first = random_proper_coloring(G, 4, random.Random(7))
    second = random_proper_coloring(G, 4, random.Random(7))
    assert first == second
    assert is_proper(G, first)


def test_random_proper_coloring_reports_impossible(k4_rainbow):
    G, _ = k4_rainbow
    assert random_proper_coloring(G, 3, random.Random(0)) is None


@pytest.mark.parametrize("graph", [octahedron(), even_double_wheel(8), even_double_wheel(10), even_double_wheel(12)],
                         ids=lambda G: G.name)
def test_eulerian_triangulations_have_six_three_colorings(graph):
    colorings = list(iter_colorings(graph, 3, break_symmetry=False))
    assert len(colorings) == 6
    assert {phi.canonical() for phi in colorings} == {eulerian_three_coloring(graph).canonical()}


@pytest.mark.parametrize("n", [6, 8, 10, 12])
def test_bichromatic_subgraphs_of_even_double_wheels_are_two_connected(n):
    G = even_double_wheel(n)
    connectivity = bichromatic_two_connectivity(G, eulerian_three_coloring(G))
    assert len(connectivity) == 3
    assert all(connectivity.values())
