"""Vertex colorings, bichromatic subgraphs and 2-colored cycles."""

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

import networkx as nx

from defcol.plane_graph import (
    Edge,
    PlaneGraph,
    Vertex,
    ensure_rotation,
    faces,
    is_two_connected,
    require_triangulation,
)


class ColoringError(ValueError):
    pass


class PartialColoringError(ColoringError):
    pass


class ImproperColoringError(ColoringError):
    pass


class ColoringInconsistencyError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class Coloring:
    """
    Total map from vertices to colors 1..k.

    Attributes:
        assignment: Color of every vertex.
        k: Declared palette size; `used` may be a proper subset of 1..k.
    """

    assignment: Mapping[Vertex, int]
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ColoringError(f"palette size must be positive, got {self.k}")
        bad = {v: c for v, c in self.assignment.items() if not 1 <= c <= self.k}
        if bad:
            raise ColoringError(f"colors outside 1..{self.k}: {dict(sorted(bad.items())[:5])}")

    @classmethod
    def from_dict(cls, assignment: Mapping[Vertex, int], k: Optional[int] = None) -> "Coloring":
        colors = dict(sorted(assignment.items()))
        return cls(assignment=colors, k=k if k is not None else max(colors.values(), default=1))

    @cached_property
    def used(self) -> FrozenSet[int]:
        return frozenset(self.assignment.values())

    def __getitem__(self, v: Vertex) -> int:
        return self.assignment[v]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.k == other.k and dict(self.assignment) == dict(other.assignment)

    def __hash__(self) -> int:
        return hash((self.k, tuple(sorted(self.assignment.items()))))

    def classes(self) -> Dict[int, Tuple[Vertex, ...]]:
        result: Dict[int, List[Vertex]] = {}
        for v, c in sorted(self.assignment.items()):
            result.setdefault(c, []).append(v)
        return {c: tuple(vs) for c, vs in sorted(result.items())}

    def restrict(self, vertices) -> "Coloring":
        return Coloring(assignment={v: self.assignment[v] for v in sorted(vertices)}, k=self.k)

    def recolor(self, v: Vertex, color: int) -> "Coloring":
        assignment = dict(self.assignment)
        assignment[v] = color
        return Coloring(assignment=assignment, k=max(self.k, color))

    def permuted(self, mapping: Mapping[int, int], k: Optional[int] = None) -> "Coloring":
        """Rename colors; colors missing from `mapping` keep their name."""
        assignment = {v: mapping.get(c, c) for v, c in self.assignment.items()}
        return Coloring(assignment=assignment, k=k if k is not None else self.k)

    def canonical(self) -> Tuple[int, ...]:
        """Color classes renamed in order of first appearance (invariant under color permutation)."""
        names: Dict[int, int] = {}
        return tuple(names.setdefault(c, len(names) + 1) for _, c in sorted(self.assignment.items()))


def require_total(G: PlaneGraph, phi: Coloring) -> None:
    missing = [v for v in G.vertices if v not in phi.assignment]
    if missing:
        raise PartialColoringError(f"coloring misses vertices {missing[:5]}")


def monochromatic_edge(G: PlaneGraph, phi: Coloring) -> Optional[Edge]:
    for u, v in G.edges:
        if phi[u] == phi[v]:
            return (u, v)
    return None


def is_proper(G: PlaneGraph, phi: Coloring) -> bool:
    require_total(G, phi)
    return monochromatic_edge(G, phi) is None


def require_proper(G: PlaneGraph, phi: Coloring) -> None:
    require_total(G, phi)
    edge = monochromatic_edge(G, phi)
    if edge is not None:
        raise ImproperColoringError(f"edge {edge[0]}-{edge[1]} is monochromatic (color {phi[edge[0]]})")


def used_pairs(phi: Coloring) -> List[Tuple[int, int]]:
    return list(combinations(sorted(phi.used), 2))


def bichromatic_edges(G: PlaneGraph, phi: Coloring) -> Dict[Tuple[int, int], List[Edge]]:
    """Edges of every G_ij, keyed by the sorted color pair; a proper coloring partitions E(G)."""
    result: Dict[Tuple[int, int], List[Edge]] = {pair: [] for pair in used_pairs(phi)}
    for u, v in G.edges:
        a, b = phi[u], phi[v]
        if a != b:
            result[(a, b) if a < b else (b, a)].append((u, v))
    return result


def _bichromatic_graph(G: PlaneGraph, phi: Coloring, i: int, j: int, skip=frozenset()) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(v for v in G.vertices if phi[v] in (i, j))
    graph.add_edges_from(
        (u, v) for u, v in G.edges if {phi[u], phi[v]} == {i, j} and (u, v) not in skip
    )
    return graph


def bichromatic_subgraph(G: PlaneGraph, phi: Coloring, i: int, j: int) -> nx.Graph:
    """
    G_ij: the subgraph induced by the vertices colored i or j.

    Raises:
        ColoringError: If i == j.
        ImproperColoringError: If phi is not proper.
    """
    if i == j:
        raise ColoringError(f"bichromatic subgraph needs two distinct colors, got {i} twice")
    require_proper(G, phi)
    return _bichromatic_graph(G, phi, i, j)


def two_colored_cycle(G: PlaneGraph, phi: Coloring) -> Optional[List[Vertex]]:
    """
    A cycle of G using only two colors, or None when phi is acyclic on G.

    Raises:
        ImproperColoringError: If phi is not proper.
    """
    require_proper(G, phi)
    for i, j in used_pairs(phi):
        graph = _bichromatic_graph(G, phi, i, j)
        if graph.number_of_edges() >= graph.number_of_nodes() - nx.number_connected_components(graph) + 1:
            cycles = nx.cycle_basis(graph)
            if cycles:
                return cycles[0]
    return None


def is_acyclic(G: PlaneGraph, phi: Coloring) -> bool:
    return two_colored_cycle(G, phi) is None


def bichromatic_two_connectivity(G: PlaneGraph, phi: Coloring) -> Dict[Tuple[int, int], bool]:
    require_proper(G, phi)
    return {(i, j): is_two_connected(_bichromatic_graph(G, phi, i, j)) for i, j in used_pairs(phi)}


def eulerian_three_coloring(G: PlaneGraph) -> Optional[Coloring]:
    """
    The proper 3-coloring of an even-degree triangulation, by propagation across faces.

    Returns None if some vertex has odd degree.

    Raises:
        NotATriangulationError: If G is not a triangulation with rotation.
        ColoringInconsistencyError: If propagation produces a conflict.
    """
    require_triangulation(G)
    if any(G.degree(v) % 2 for v in G.vertices):
        return None
    triangles = faces(ensure_rotation(G))
    u, v = G.edges[0]
    colors: Dict[Vertex, int] = {u: 1, v: 2}
    progress = True
    while progress and len(colors) < G.n:
        progress = False
        for face in triangles:
            known = [x for x in face if x in colors]
            if len(known) != 2:
                continue
            unknown = next(x for x in face if x not in colors)
            colors[unknown] = 6 - colors[known[0]] - colors[known[1]]
            progress = True
    if len(colors) < G.n:
        raise ColoringInconsistencyError(f"propagation left {G.n - len(colors)} vertices uncolored")
    for face in triangles:
        if len({colors[x] for x in face}) != 3:
            raise ColoringInconsistencyError(f"face {face} is not rainbow after propagation")
    return Coloring.from_dict(colors, k=3)


def apex_recoloring(G: PlaneGraph, phi3: Coloring, v: Vertex) -> Coloring:
    """
    phi_v: recolor v with the fresh color 4.

    Raises:
        ColoringError: If phi3 is not a proper coloring with exactly three colors.
    """
    require_proper(G, phi3)
    if len(phi3.used) != 3 or max(phi3.used) > 3:
        raise ColoringError(f"expected a proper 3-coloring, got colors {sorted(phi3.used)}")
    if v not in phi3.assignment:
        raise PartialColoringError(f"vertex {v} is not colored")
    return Coloring(assignment={**phi3.assignment, v: 4}, k=4)


def random_proper_coloring(G: PlaneGraph, k: int, rng: random.Random) -> Optional[Coloring]:
    """Randomized backtracking; deterministic for a seeded `rng`. None if no proper k-coloring exists."""
    from defcol.coloring_search import search_order

    order = search_order(G)
    assignment: Dict[Vertex, int] = {}

    def extend(index: int) -> bool:
        if index == len(order):
            return True
        v = order[index]
        palette = list(range(1, k + 1))
        rng.shuffle(palette)
        taken = {assignment[u] for u in G.adjacency[v] if u in assignment}
        for color in palette:
            if color in taken:
                continue
            assignment[v] = color
            if extend(index + 1):
                return True
            del assignment[v]
        return False

    if not extend(0):
        return None
    return Coloring.from_dict(assignment, k=k)
