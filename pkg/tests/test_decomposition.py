import pytest

from defcol.decomposition import decompose, is_four_connected_triangulation, separating_triangles
from defcol.instances.generators import generate, icosahedron, k4, random_triangulation, stacked_chain
from defcol.plane_graph import NotATriangulationError, PlaneGraph


def test_four_connected_triangulations(octa, dw7):
    for G in (octa, dw7, icosahedron()):
        assert separating_triangles(G) == []
        assert is_four_connected_triangulation(G)
        tree = decompose(G)
        assert tree.size == 1
        assert tree.check(G).ok
    assert not is_four_connected_triangulation(k4())


def test_stacked_chain_decomposes_into_a_path_of_k4s():
    G = stacked_chain(4)
    tree = decompose(G)
    assert tree.size == 4
    assert all(piece.n == 4 for piece in tree.pieces)
    assert len(tree.triangles) == 3
    assert tree.is_path()
    assert tree.vertex_total() == G.n + 3 * 3
    assert tree.check(G).ok


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_random_stacked_triangulation(seed):
    G = random_triangulation(9, seed)
    tree = decompose(G)
    assert tree.size == G.n - 3
    assert tree.is_tree()
    assert tree.check(G).ok
    assert tree.reglue().edge_set == G.edge_set


def test_glued_double_wheels_have_one_separating_triangle():
    G = generate("glued-even-double-wheels", {"n1": 6, "n2": 8}).graph
    assert G.n == 11
    tree = decompose(G)
    assert len(tree.triangles) == 1
    assert sorted(piece.n for piece in tree.pieces) == [6, 8]
    assert tree.check(G).ok


def test_decompose_requires_triangulation():
    G = PlaneGraph.from_edges(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(NotATriangulationError):
        decompose(G)
