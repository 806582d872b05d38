import random

import pytest

from defcol.coloring import random_proper_coloring
from defcol.coloring_search import search_coloring
from defcol.instances.generators import (
    catalog_small,
    double_wheel,
    even_double_wheel,
    icosahedron,
    random_triangulation,
    stacked_chain,
)
from defcol.plane_graph import PlaneGraph, faces
from defcol.transversal import NotACliqueError, is_u_acyclic_transversal, m_value, verify_certificate
from defcol.u_acyclic import (
    constructive_u_acyclic_transversal,
    exchange_transversal,
    u_acyclic_transversal,
)


def _structural_checks_pass(G, phi, cert) -> bool:
    report = verify_certificate(G, phi, cert)
    return all(report.passed(name) for name in ("edges_in_graph", "kills_all", "forest", "no_u_path", "flags"))


def test_exact_transversal_on_double_wheel(dw7, dw7_phi4):
    u = faces(dw7)[0]
    cert = u_acyclic_transversal(dw7, dw7_phi4, u)
    assert cert.optimal
    assert cert.size == m_value(dw7, dw7_phi4) == 2
    assert cert.u_set == tuple(sorted(u))
    assert verify_certificate(dw7, dw7_phi4, cert).ok


def test_exact_transversal_on_octahedron(octa, octa_phi3):
    for u in ((), (0,), (0, 1), faces(octa)[3]):
        edges = exchange_transversal(octa, octa_phi3, u)
        assert len(edges) == 3
        assert is_u_acyclic_transversal(octa, octa_phi3, edges, u)


def test_constructive_transversal_meets_the_general_bound(dw7, dw7_phi4):
    cert = constructive_u_acyclic_transversal(dw7, dw7_phi4, faces(dw7)[0])
    assert _structural_checks_pass(dw7, dw7_phi4, cert)
    assert cert.size <= dw7.n - 4
    assert cert.method.startswith("constructive")
    assert not cert.optimal


@pytest.mark.parametrize("graph", [
    pytest.param(stacked_chain(3), id="stacked-chain-3"),
    pytest.param(random_triangulation(9, seed=4), id="random-9"),
], )
def test_both_methods_on_stacked_triangulations(graph):
    rng = random.Random(11)
    for k in (3, 4, 5):
        phi = random_proper_coloring(graph, k, rng)
        if phi is None:
            continue
        u = faces(graph)[0]
        exact = u_acyclic_transversal(graph, phi, u)
        assert exact.size == m_value(graph, phi)
        assert verify_certificate(graph, phi, exact).ok
        constructive = constructive_u_acyclic_transversal(graph, phi, u)
        assert _structural_checks_pass(graph, phi, constructive)
        assert constructive.size <= graph.n - len(phi.used)


def test_catalog_graphs_reach_m_value():
    for G in catalog_small(6):
        phi = search_coloring(G, 4).coloring
        for u in (faces(G)[0], faces(G)[-1][:2]):
            cert = u_acyclic_transversal(G, phi, u)
            assert cert.size == m_value(G, phi), G.name


def test_plane_graph_that_is_not_a_triangulation():
    # a 4-colored wheel with a missing spoke
    G = PlaneGraph.from_edges(range(6), [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                                         (0, 5), (2, 5), (3, 5), (4, 5)])
    phi = search_coloring(G, 4).coloring
    cert = u_acyclic_transversal(G, phi, (0, 5))
    assert cert.size == m_value(G, phi)
    assert verify_certificate(G, phi, cert).ok


def test_u_must_be_a_clique(octa, octa_phi3):
    with pytest.raises(NotACliqueError):
        u_acyclic_transversal(octa, octa_phi3, (0, 2))
    with pytest.raises(NotACliqueError):
        constructive_u_acyclic_transversal(octa, octa_phi3, (0, 1, 4, 5))


@pytest.mark.parametrize("graph", [
    pytest.param(double_wheel(7), id="double-wheel-7"),
    pytest.param(double_wheel(9), id="double-wheel-9"),
    pytest.param(even_double_wheel(8), id="even-double-wheel-8"),
    pytest.param(even_double_wheel(10), id="even-double-wheel-10"),
    pytest.param(icosahedron(), id="icosahedron"),
    pytest.param(random_triangulation(10, seed=1), id="random-10-1"),
    pytest.param(random_triangulation(11, seed=2), id="random-11-2"),
    pytest.param(random_triangulation(12, seed=5), id="random-12-5"),
])
@pytest.mark.parametrize("k", [4, 5])
def test_every_level_lifts_without_repair(graph, k):
    colorings = [search_coloring(graph, k).coloring, random_proper_coloring(graph, k, random.Random(k))]
    for phi in colorings:
        assert phi is not None
        for u in ((), faces(graph)[0]):
            cert = constructive_u_acyclic_transversal(graph, phi, u, debug_lifting=True)
            assert cert.method == "constructive"
            assert _structural_checks_pass(graph, phi, cert)
            assert cert.size <= graph.n - len(phi.used)
