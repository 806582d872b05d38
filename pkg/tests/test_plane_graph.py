from itertools import combinations

import networkx as nx
import pytest

from defcol.instances.generators import icosahedron, random_triangulation, stacked_chain
from defcol.plane_graph import (
    GraphError,
    MissingRotationError,
    NotATriangulationError,
    PlaneGraph,
    RewriteError,
    clique_separator,
    complete_to_triangulation,
    contract_path,
    delete_and_retriangulate,
    edge_key,
    embed,
    faces,
    identify_vertices,
    is_triangulation,
    is_two_connected,
    require_triangulation,
    subdivide,
    undo_contraction,
    validate,
)


def test_edge_key():
    assert edge_key(5, 2) == (2, 5)
    with pytest.raises(GraphError):
        edge_key(3, 3)


def test_from_edges_rejects_loops_and_parallel_edges():
    with pytest.raises(GraphError):
        PlaneGraph.from_edges(range(2), [(0, 0)])
    with pytest.raises(GraphError):
        PlaneGraph.from_edges(range(2), [(0, 1), (1, 0)])


@pytest.mark.parametrize("graph", [
    pytest.param(icosahedron(), id="icosahedron"),
    pytest.param(random_triangulation(10, seed=3), id="random-10"),
    pytest.param(stacked_chain(4), id="stacked-chain-4"),
])
def test_triangulation_faces(graph):
    """A plane triangulation on n vertices has 2n - 4 triangular faces."""
    face_list = faces(graph)
    assert len(face_list) == 2 * graph.n - 4
    assert all(len(face) == 3 for face in face_list)
    assert validate(graph, expect_triangulation=True).ok


def test_faces_of_double_wheel(dw7):
    face_list = faces(dw7)
    assert len(face_list) == 10
    # every face holds exactly one hub
    assert all(len({5, 6} & set(face)) == 1 for face in face_list)


def test_faces_need_rotation():
    G = PlaneGraph.from_edges(range(3), [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(MissingRotationError):
        faces(G)
    assert len(faces(embed(G))) == 2


def test_k5_is_not_a_triangulation():
    G = PlaneGraph.from_edges(range(5), combinations(range(5), 2), triangulation=True)
    report = validate(G, expect_triangulation=True)
    assert not report.ok
    assert not report.passed("triangulation")
    with pytest.raises(NotATriangulationError):
        require_triangulation(G)


def test_inconsistent_rotation_fails_euler(k4_rainbow):
    G, _ = k4_rainbow
    rotation = dict(G.rotation)
    rotation[0] = tuple(reversed(rotation[0]))
    report = validate(G.with_rotation(rotation), expect_triangulation=True)
    assert report.passed("rotation")
    assert not report.passed("euler")
    assert not report.passed("triangulation")


def test_disconnected_graph_is_reported():
    G = PlaneGraph.from_edges(range(4), [(0, 1), (2, 3)])
    report = validate(G)
    assert not report.passed("connected")


def test_complete_path_to_triangulation():
    G = PlaneGraph.from_edges(range(5), [(0, 1), (1, 2), (2, 3), (3, 4)])
    T, added = complete_to_triangulation(G)
    assert is_triangulation(T)
    assert len(added) == 3 * 5 - 6 - 4
    assert set(G.edges) <= set(T.edges)
    assert not set(added) & set(G.edges)


def test_complete_disconnected_graph():
    G = PlaneGraph.from_edges(range(6), [(0, 1), (1, 2), (3, 4), (4, 5)])
    T, _ = complete_to_triangulation(G)
    assert is_triangulation(T)


def test_contract_rim_path(dw7):
    G = contract_path(dw7, 0, 1, 2)
    assert G.n == 5
    assert is_triangulation(G)
    assert G.origin(0) == (0, 1, 2)
    assert undo_contraction(G) is dw7


def test_contract_antipodal_path_creates_parallel_edge(octa):
    with pytest.raises(RewriteError):
        contract_path(octa, 0, 1, 2)


def test_contract_requires_a_path(octa):
    with pytest.raises(RewriteError):
        contract_path(octa, 0, 2, 1)


def test_identify_vertices_on_facial_four_cycle():
    # the rim of a wheel with a missing spoke leaves a facial 4-cycle 0-1-2-5
    G = embed(PlaneGraph.from_edges(range(6), [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                                               (0, 5), (2, 5), (3, 5), (4, 5)]))
    quads = [set(face) for face in faces(G) if len(face) == 4]
    assert quads == [{0, 1, 2, 5}]
    H = identify_vertices(G, 1, 5)
    assert H.n == 5
    assert H.adjacency[1] == frozenset({0, 2, 3, 4})
    with pytest.raises(RewriteError):
        identify_vertices(G, 0, 3)


def test_delete_and_retriangulate(octa):
    # vertex 4 has link cycle 0 1 2 3 in some orientation; one chord fills the hole
    H = delete_and_retriangulate(octa, 4, [(0, 2)])
    assert H.n == 5
    assert is_triangulation(H)
    with pytest.raises(RewriteError):
        delete_and_retriangulate(octa, 4, [(0, 1)])
    with pytest.raises(RewriteError):
        delete_and_retriangulate(octa, 4, [])


def test_subdivide_keeps_planarity(octa):
    H = subdivide(octa, [(0, 1)])
    assert H.n == 7
    assert not H.has_edge(0, 1)
    assert H.adjacency[6] == frozenset({0, 1})
    assert validate(H).ok
    with pytest.raises(GraphError):
        subdivide(octa, [(0, 2)])


def test_clique_separator(octa):
    assert clique_separator(octa) is None
    assert clique_separator(stacked_chain(2)) == (1, 2, 3)
    path = PlaneGraph.from_edges(range(3), [(0, 1), (1, 2)])
    assert clique_separator(path) == (1,)
    assert clique_separator(PlaneGraph.from_edges(range(2), [])) == ()


def test_subgraph_and_without_edges(octa):
    H = octa.subgraph([0, 1, 4])
    assert H.edges == ((0, 1), (0, 4), (1, 4))
    assert octa.without_edges([(1, 0)]).m == octa.m - 1
    with pytest.raises(GraphError):
        octa.subgraph([0, 99])


def test_is_two_connected():
    assert is_two_connected(nx.cycle_graph(4))
    assert not is_two_connected(nx.path_graph(3))
    assert not is_two_connected(nx.Graph([(0, 1)]))
    assert not is_two_connected(nx.Graph([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]))
    assert is_two_connected(icosahedron())
