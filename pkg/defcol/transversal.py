"""
Minimum 2-colored-cycle transversals for a fixed proper coloring.

For a proper coloring phi, an edge set E' kills every 2-colored cycle iff E(G) - E' is a
forest inside every bichromatic subgraph G_ij. The minimum size is therefore

    m(G, phi) = |E| - (|used| - 1) * n + sum of component counts of the G_ij,

and every minimum transversal is the complement of a family of spanning forests.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind

from defcol.checks import ValidationReport
from defcol.coloring import (
    Coloring,
    ColoringError,
    apex_recoloring,
    bichromatic_subgraph,
    eulerian_three_coloring,
    require_proper,
    two_colored_cycle,
)
from defcol.coloring_search import iter_colorings
from defcol.decomposition import decompose, is_four_connected_triangulation
from defcol.plane_graph import Edge, GraphError, PlaneGraph, Vertex, edge_key, is_triangulation


class AvoidanceCycleError(ValueError):
    pass


class NotACliqueError(GraphError):
    pass


class CharacterizationMismatchError(RuntimeError):
    pass


def used_colors(G: PlaneGraph, phi: Coloring) -> Tuple[int, ...]:
    """Colors appearing on V(G); phi may color a larger graph."""
    return tuple(sorted({phi[v] for v in G.vertices}))


def color_pairs(G: PlaneGraph, phi: Coloring) -> List[Tuple[int, int]]:
    return list(combinations(used_colors(G, phi), 2))


def pair_of(phi: Coloring, e: Edge) -> Tuple[int, int]:
    a, b = phi[e[0]], phi[e[1]]
    return (a, b) if a < b else (b, a)


def m_value(G: PlaneGraph, phi: Coloring) -> int:
    """
    Exact m(G, phi) by the component-count formula.

    Raises:
        ImproperColoringError: If phi is not proper on G.
    """
    require_proper(G, phi)
    used = used_colors(G, phi)
    components = sum(nx.number_connected_components(bichromatic_subgraph(G, phi, i, j))
                     for i, j in combinations(used, 2))
    return G.m - (len(used) - 1) * G.n + components


@dataclass(frozen=True)
class Bound:
    """Upper bound applicable to (G, phi): n - |used| in general, n - 5 for 4-connected 4-colored triangulations."""

    value: int
    label: str


def bound_for(G: PlaneGraph, phi: Coloring) -> Bound:
    k = len(used_colors(G, phi))
    if k == 4 and G.n >= 5 and is_triangulation(G) and is_four_connected_triangulation(G):
        return Bound(value=G.n - 5, label="n-5")
    return Bound(value=G.n - k, label=f"n-{k}")


def _edge_graph(edges: Iterable[Edge]) -> nx.Graph:
    graph = nx.Graph()
    graph.add_edges_from(edges)
    return graph


def edge_set_cycle(edges: Iterable[Edge]) -> Optional[List[Vertex]]:
    cycles = nx.cycle_basis(_edge_graph(edges))
    return cycles[0] if cycles else None


def u_path(edges: Iterable[Edge], u_set: Sequence[Vertex]) -> Optional[List[Vertex]]:
    """A path inside the edge set joining two distinct vertices of u_set."""
    graph = _edge_graph(edges)
    for a, b in combinations(sorted(u_set), 2):
        if a in graph and b in graph and nx.has_path(graph, a, b):
            return nx.shortest_path(graph, a, b)
    return None


def surviving_cycle(G: PlaneGraph, phi: Coloring, edges: Iterable[Edge]) -> Optional[List[Vertex]]:
    """A 2-colored cycle of G - edges, None if the edges form a transversal."""
    return two_colored_cycle(G.without_edges(edges), phi)


def is_u_acyclic_transversal(G: PlaneGraph, phi: Coloring, edges: Iterable[Edge], u_set: Sequence[Vertex] = ()) -> bool:
    edges = list(edges)
    if any(not G.has_edge(u, v) for u, v in edges):
        return False
    return (surviving_cycle(G, phi, edges) is None and edge_set_cycle(edges) is None
            and u_path(edges, u_set) is None)


@dataclass(frozen=True)
class TransversalCertificate:
    """
    An edge set together with the facts claimed about it.

    Attributes:
        edges: The transversal E', sorted.
        u_set: The vertex set U that E' must not connect.
        kills_all: Every G_ij - E' is a forest.
        forest: E' induces a forest.
        no_u_path: No path of E' joins two distinct vertices of U.
        bound: Applicable upper bound.
        optimal: True when |E'| = m(G, phi) was certified.
        method: How the set was produced.
    """

    edges: Tuple[Edge, ...]
    kills_all: bool
    forest: bool
    no_u_path: bool
    bound: Bound
    u_set: Tuple[Vertex, ...] = ()
    optimal: bool = False
    method: str = ""

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def bound_met(self) -> bool:
        return self.size <= self.bound.value

    @property
    def u_acyclic(self) -> bool:
        return self.kills_all and self.forest and self.no_u_path


def make_certificate(G: PlaneGraph, phi: Coloring, edges: Iterable[Edge], u_set: Sequence[Vertex] = (),
                     optimal: bool = False, method: str = "") -> TransversalCertificate:
    chosen = tuple(sorted({edge_key(u, v) for u, v in edges}))
    return TransversalCertificate(
        edges=chosen,
        kills_all=surviving_cycle(G, phi, chosen) is None,
        forest=edge_set_cycle(chosen) is None,
        no_u_path=u_path(chosen, u_set) is None,
        bound=bound_for(G, phi),
        u_set=tuple(sorted(u_set)),
        optimal=optimal,
        method=method,
    )


def min_transversal(G: PlaneGraph, phi: Coloring, avoid: Iterable[Tuple[Vertex, Vertex]] = ()) -> TransversalCertificate:
    """
    Minimum transversal as the complement of spanning forests extending the avoidance set.

    Per color pair, a union-find runs over the avoided edges first and then over the
    remaining edges in sorted order; edges closing a cycle form the transversal.

    Raises:
        ImproperColoringError: If phi is not proper on G.
        GraphError: If an avoided edge is not an edge of G.
        AvoidanceCycleError: If the avoided edges contain a cycle inside some G_ij.
    """
    require_proper(G, phi)
    avoided = sorted({edge_key(u, v) for u, v in avoid})
    missing = [e for e in avoided if e not in G.edge_set]
    if missing:
        raise GraphError(f"avoided edges are not in the graph: {missing[:5]}")
    avoided_set = set(avoided)
    by_pair: Dict[Tuple[int, int], List[Edge]] = {pair: [] for pair in color_pairs(G, phi)}
    for e in G.edges:
        by_pair[pair_of(phi, e)].append(e)

    chosen: List[Edge] = []
    for pair, pair_edges in by_pair.items():
        forest = UnionFind()
        for u, v in (e for e in pair_edges if e in avoided_set):
            if forest[u] == forest[v]:
                raise AvoidanceCycleError(
                    f"avoided edges contain a cycle in the subgraph of colors {pair[0]} and {pair[1]} (closing edge {u}-{v})"
                )
            forest.union(u, v)
        for u, v in (e for e in pair_edges if e not in avoided_set):
            if forest[u] == forest[v]:
                chosen.append((u, v))
            else:
                forest.union(u, v)
    return make_certificate(G, phi, chosen, optimal=True, method="spanning-forest")


def verify_certificate(G: PlaneGraph, phi: Coloring, cert: TransversalCertificate) -> ValidationReport:
    """Recompute every claim of the certificate independently; never raises on a failed check."""
    report = ValidationReport()
    outside = [e for e in cert.edges if not G.has_edge(*e)]
    report.add("edges_in_graph", not outside, "" if not outside else f"edges not in graph: {outside[:5]}")
    inside = [e for e in cert.edges if G.has_edge(*e)]
    try:
        cycle = surviving_cycle(G, phi, inside)
    except ColoringError as err:
        report.add("kills_all", False, str(err))
        return report
    report.add("kills_all", cycle is None,
               "" if cycle is None else f"2-colored cycle survives: {cycle}", witness=cycle)
    forest_cycle = edge_set_cycle(cert.edges)
    report.add("forest", forest_cycle is None,
               "" if forest_cycle is None else f"transversal contains cycle {forest_cycle}", witness=forest_cycle)
    path = u_path(cert.edges, cert.u_set)
    report.add("no_u_path", path is None,
               "" if path is None else f"transversal joins U-vertices by path {path}", witness=path)
    recorded = (cert.kills_all, cert.forest, cert.no_u_path)
    actual = (cycle is None, forest_cycle is None, path is None)
    report.add("flags", recorded == actual, f"recorded {recorded}, recomputed {actual}")
    bound = bound_for(G, phi)
    report.add("bound", cert.size <= bound.value, f"size {cert.size} vs bound {bound.label} = {bound.value}")
    if cert.optimal:
        m = m_value(G, phi)
        report.add("optimal", cert.size == m, f"size {cert.size} vs m(G, phi) = {m}")
    report.info["size"] = cert.size
    return report


@dataclass(frozen=True)
class Composition:
    total: int
    breakdown: Tuple[int, ...]


def compose_over_decomposition(G: PlaneGraph, phi: Coloring) -> Composition:
    """Sum of m over the 4-connected pieces with the restricted colorings; equals m_value(G, phi)."""
    require_proper(G, phi)
    tree = decompose(G)
    breakdown = tuple(
        m_value(piece, Coloring(assignment={v: phi[mapping[v]] for v in piece.vertices}, k=phi.k))
        for piece, mapping in zip(tree.pieces, tree.piece_maps)
    )
    return Composition(total=sum(breakdown), breakdown=breakdown)


class EqualityClass(str, Enum):
    EQUALS_N_MINUS_3 = "n-3"
    EQUALS_N_MINUS_4 = "n-4"
    BELOW = "below"


def _observed_class(G: PlaneGraph, m: int) -> EqualityClass:
    if m == G.n - 3:
        return EqualityClass.EQUALS_N_MINUS_3
    if m == G.n - 4:
        return EqualityClass.EQUALS_N_MINUS_4
    return EqualityClass.BELOW


def characterize_equality(G: PlaneGraph, phi: Coloring) -> EqualityClass:
    """
    Classify m(G, phi) against n - 3 and n - 4 from the coloring and the decomposition alone.

    n - 3 iff phi uses three colors; n - 4 iff exactly one piece is a 4-colored K4 and every
    other piece sees three colors.

    Raises:
        NotATriangulationError: If G is not a triangulation.
        CharacterizationMismatchError: If the prediction disagrees with m_value.
    """
    tree = decompose(G)
    require_proper(G, phi)
    if len(used_colors(G, phi)) == 3:
        predicted = EqualityClass.EQUALS_N_MINUS_3
    else:
        piece_colors = [len(used_colors(piece, phi)) for piece in tree.pieces]
        k4_pieces = [i for i, piece in enumerate(tree.pieces) if piece.n == 4 and piece_colors[i] == 4]
        others_three = all(c == 3 for i, c in enumerate(piece_colors) if i not in k4_pieces)
        predicted = (EqualityClass.EQUALS_N_MINUS_4 if len(k4_pieces) == 1 and others_three
                     else EqualityClass.BELOW)
    m = m_value(G, phi)
    observed = _observed_class(G, m)
    if observed != predicted:
        raise CharacterizationMismatchError(
            f"{G.name or 'graph'}: predicted {predicted.value}, but m = {m} with n = {G.n}"
        )
    return predicted


def m_k(G: PlaneGraph, k: int) -> float:
    """Minimum of m_value over proper k-colorings (one per color-permutation orbit); math.inf if none."""
    best = math.inf
    for phi in iter_colorings(G, k):
        best = min(best, m_value(G, phi))
        if best == 0:
            break
    return best


@dataclass(frozen=True)
class ApexBound:
    """
    Attributes:
        three_coloring_value: m(G, phi3) for the 3-coloring of an even triangulation.
        apex_values: m(G, phi_v) for every vertex v.
    """

    three_coloring_value: int
    apex_values: Dict[Vertex, int] = field(default_factory=dict)

    @property
    def max_apex_value(self) -> int:
        return max(self.apex_values.values(), default=0)


def apex_bound(G: PlaneGraph) -> ApexBound:
    """
    Raises:
        NotATriangulationError: If G is not a triangulation.
        ColoringError: If G has a vertex of odd degree.
    """
    phi3 = eulerian_three_coloring(G)
    if phi3 is None:
        raise ColoringError(f"{G.name or 'graph'} has a vertex of odd degree")
    return ApexBound(
        three_coloring_value=m_value(G, phi3),
        apex_values={v: m_value(G, apex_recoloring(G, phi3, v)) for v in G.vertices},
    )


def normalize_u(G: PlaneGraph, u_set: Iterable[Vertex]) -> Tuple[Vertex, ...]:
    """
    Raises:
        NotACliqueError: If U has more than three vertices, unknown vertices, or a non-adjacent pair.
    """
    chosen = tuple(sorted(set(u_set)))
    if len(chosen) > 3:
        raise NotACliqueError(f"U must have at most 3 vertices, got {len(chosen)}")
    unknown = [v for v in chosen if v not in G.adjacency]
    if unknown:
        raise NotACliqueError(f"U contains vertices not in the graph: {unknown}")
    for a, b in combinations(chosen, 2):
        if not G.has_edge(a, b):
            raise NotACliqueError(f"U is not a clique: {a} and {b} are not adjacent")
    return chosen
