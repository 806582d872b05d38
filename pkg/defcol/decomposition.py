"""
Separating triangles and the decomposition of a triangulation into 4-connected pieces.
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from defcol.checks import ValidationReport
from defcol.plane_graph import PlaneGraph, Vertex, ensure_rotation, require_triangulation

Triangle = Tuple[Vertex, Vertex, Vertex]


def _triangles(G: PlaneGraph) -> List[Triangle]:
    result = []
    for u, v in G.edges:
        for w in sorted(G.adjacency[u] & G.adjacency[v]):
            if w > v:
                result.append((u, v, w))
    return result


def _separates(G: PlaneGraph, triangle: Sequence[Vertex]) -> bool:
    rest = set(G.vertices) - set(triangle)
    return len(rest) >= 2 and not nx.is_connected(G.to_networkx().subgraph(rest))


def separating_triangles(G: PlaneGraph) -> List[Triangle]:
    """
    All triangles T of a triangulation with G - T disconnected, sorted.

    Raises:
        NotATriangulationError: If G is not a triangulation.
    """
    require_triangulation(G)
    return [t for t in _triangles(G) if _separates(G, t)]


def is_four_connected_triangulation(G: PlaneGraph) -> bool:
    """A triangulation is 4-connected iff n >= 6 and it has no separating triangle."""
    return G.n >= 6 and not separating_triangles(G)


@dataclass(frozen=True)
class TreeEdge:
    first: int
    second: int
    triangle: Triangle


@dataclass(frozen=True)
class DecompositionTree:
    """
    Attributes:
        pieces: Maximal pieces without separating triangles (4-connected, or at most 4 vertices).
        triangles: The separating triangles of the decomposed graph, in split order.
        tree_edges: Pairs of pieces sharing a separating triangle.
        piece_maps: For every piece, the map from piece vertices to vertices of the decomposed graph.
    """

    pieces: Tuple[PlaneGraph, ...]
    triangles: Tuple[Triangle, ...]
    tree_edges: Tuple[TreeEdge, ...]
    piece_maps: Tuple[Dict[Vertex, Vertex], ...]

    @property
    def size(self) -> int:
        return len(self.pieces)

    def tree(self) -> nx.Graph:
        tree = nx.Graph()
        tree.add_nodes_from(range(len(self.pieces)))
        tree.add_edges_from((e.first, e.second) for e in self.tree_edges)
        return tree

    def is_tree(self) -> bool:
        tree = self.tree()
        return tree.number_of_edges() == len(self.tree_edges) and nx.is_tree(tree)

    def is_path(self) -> bool:
        tree = self.tree()
        return self.is_tree() and all(d <= 2 for _, d in tree.degree())

    def vertex_total(self) -> int:
        return sum(piece.n for piece in self.pieces)

    def reglue(self) -> PlaneGraph:
        """Union of the pieces through their vertex maps."""
        vertices = set()
        edges = set()
        for piece, mapping in zip(self.pieces, self.piece_maps):
            vertices.update(mapping[v] for v in piece.vertices)
            for u, v in piece.edges:
                a, b = mapping[u], mapping[v]
                edges.add((a, b) if a < b else (b, a))
        return PlaneGraph.from_edges(sorted(vertices), sorted(edges))

    def check(self, G: PlaneGraph) -> ValidationReport:
        report = ValidationReport()
        report.add("tree", self.is_tree(), f"{len(self.pieces)} pieces, {len(self.tree_edges)} tree edges")
        bad = [i for i, piece in enumerate(self.pieces) if piece.n > 4 and not is_four_connected_triangulation(piece)]
        report.add("pieces", not bad, "" if not bad else f"pieces {bad} are not 4-connected triangulations")
        expected = G.n + 3 * (len(self.pieces) - 1)
        report.add("vertex_total", self.vertex_total() == expected,
                   f"sum of piece orders {self.vertex_total()}, expected {expected}")
        reglued = self.reglue()
        report.add("reglue", reglued.edge_set == G.edge_set and reglued.vertices == G.vertices,
                   "re-gluing the pieces reproduces the graph")
        return report


def decompose(G: PlaneGraph) -> DecompositionTree:
    """
    Split G along separating triangles until no piece has one.

    The first piece containing a separating triangle is split on its smallest one: the
    component of piece - T with the smallest vertex, together with T, stays in place, and the
    rest, together with T, becomes a new piece. Existing tree edges follow their triangle.

    Raises:
        NotATriangulationError: If G is not a triangulation.
    """
    require_triangulation(G)
    G = ensure_rotation(G)
    piece_vertices: List[Tuple[Vertex, ...]] = [G.vertices]
    triangles: List[Triangle] = []
    edges: List[TreeEdge] = []
    index = 0
    while index < len(piece_vertices):
        piece = G.subgraph(piece_vertices[index], triangulation=True)
        separating = [t for t in _triangles(piece) if _separates(piece, t)]
        if not separating:
            index += 1
            continue
        triangle = separating[0]
        rest = piece.to_networkx().subgraph(set(piece.vertices) - set(triangle))
        components = sorted((sorted(c) for c in nx.connected_components(rest)), key=lambda c: c[0])
        first = tuple(sorted(set(components[0]) | set(triangle)))
        second = tuple(sorted(set(v for c in components[1:] for v in c) | set(triangle)))
        new_index = len(piece_vertices)
        piece_vertices[index] = first
        piece_vertices.append(second)
        first_set = set(first)
        edges = [
            e if (e.first != index and e.second != index) or set(e.triangle) <= first_set
            else TreeEdge(new_index if e.first == index else e.first,
                          new_index if e.second == index else e.second, e.triangle)
            for e in edges
        ]
        edges.append(TreeEdge(index, new_index, triangle))
        triangles.append(triangle)

    name = G.name or "graph"
    pieces = tuple(G.subgraph(vs, triangulation=True, name=f"{name}/piece{i}") for i, vs in enumerate(piece_vertices))
    return DecompositionTree(
        pieces=pieces,
        triangles=tuple(triangles),
        tree_edges=tuple(edges),
        piece_maps=tuple({v: v for v in piece.vertices} for piece in pieces),
    )
