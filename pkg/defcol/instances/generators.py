"""
Generators for the graph families used to exercise the bounds: small cliques, double
wheels, stacked chains, random stacked triangulations, the octahedron replacement and the
isomorph-free catalog of triangulations on at most six vertices.
"""

import random
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from defcol.coloring_search import SearchStatus, search_coloring
from defcol.plane_graph import Edge, PlaneGraph, Vertex, edge_key, embed, faces, is_triangulation
from defcol.version import get_version


class GeneratorParameterError(ValueError):
    pass


def _planar(vertices, edges, name: str, triangulation: bool = True) -> PlaneGraph:
    return embed(PlaneGraph.from_edges(vertices, edges, triangulation=triangulation, name=name))


def k3() -> PlaneGraph:
    return _planar(range(3), [(0, 1), (0, 2), (1, 2)], "k3")


def k4() -> PlaneGraph:
    return _planar(range(4), combinations(range(4), 2), "k4")


def _double_wheel(n: int, name: str) -> PlaneGraph:
    rim = n - 2
    edges = [edge_key(i, (i + 1) % rim) for i in range(rim)]
    edges += [(i, hub) for hub in (rim, rim + 1) for i in range(rim)]
    return _planar(range(n), edges, name)


def double_wheel(n: int) -> PlaneGraph:
    """Odd cycle C_{n-2} joined to two non-adjacent hubs; rim 0..n-3, hubs n-2 and n-1."""
    if n < 7 or n % 2 == 0:
        raise GeneratorParameterError(f"double wheel needs an odd n >= 7, got {n}")
    return _double_wheel(n, f"double-wheel-{n}")


def even_double_wheel(n: int) -> PlaneGraph:
    """Even cycle C_{n-2} joined to two non-adjacent hubs: an Eulerian triangulation."""
    if n < 6 or n % 2:
        raise GeneratorParameterError(f"even double wheel needs an even n >= 6, got {n}")
    return _double_wheel(n, f"even-double-wheel-{n}")


def octahedron() -> PlaneGraph:
    """Antipodal pairs (0, 2), (1, 3) and (4, 5)."""
    return even_double_wheel(6).renamed("octahedron")


def icosahedron() -> PlaneGraph:
    top, bottom = 0, 11
    upper = [1 + i for i in range(5)]
    lower = [6 + i for i in range(5)]
    edges = []
    for i in range(5):
        j = (i + 1) % 5
        edges += [(top, upper[i]), (upper[i], upper[j]), (upper[i], lower[i]), (upper[i], lower[j]),
                  (lower[i], lower[j]), (lower[i], bottom)]
    return _planar(range(12), [edge_key(u, v) for u, v in edges], "icosahedron")


def stacked_chain(t: int) -> PlaneGraph:
    """t copies of K4 glued in a path: vertex x >= 3 is joined to x-3, x-2 and x-1."""
    if t < 1:
        raise GeneratorParameterError(f"stacked chain needs t >= 1, got {t}")
    n = t + 3
    edges = [(x - d, x) for x in range(1, n) for d in (1, 2, 3) if x - d >= 0]
    return _planar(range(n), edges, f"stacked-chain-{t}")


def stacked_k4() -> PlaneGraph:
    return stacked_chain(2).renamed("stacked-k4")


def random_triangulation(n: int, seed: int = 0) -> PlaneGraph:
    """
    K4 with n - 4 vertices inserted into faces chosen uniformly by random.Random(seed).

    The result is a stacked triangulation, so it always has separating triangles for n > 4.
    """
    if n < 4:
        raise GeneratorParameterError(f"random triangulation needs n >= 4, got {n}")
    rng = random.Random(seed)
    triangles = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    edges = list(combinations(range(4), 2))
    for x in range(4, n):
        a, b, c = triangles.pop(rng.randrange(len(triangles)))
        edges += [(a, x), (b, x), (c, x)]
        triangles += [(a, b, x), (a, c, x), (b, c, x)]
        triangles.sort()
    return _planar(range(n), edges, f"random-triangulation-{n}-s{seed}")


@dataclass(frozen=True)
class ReplacementResult:
    """
    Attributes:
        graph: The triangulation obtained by replacing every chosen facial triangle by an octahedron.
        host: The Eulerian triangulation that was transformed.
        octahedra: Vertex sets of the octahedra; their edge sets partition E(graph).
    """

    graph: PlaneGraph
    host: PlaneGraph
    octahedra: Tuple[Tuple[Vertex, ...], ...]

    def parts(self) -> List[PlaneGraph]:
        return [self.graph.subgraph(vs, triangulation=True, name=f"octahedron-{i}")
                for i, vs in enumerate(self.octahedra)]


def _face_class(H: PlaneGraph) -> List[Tuple[Vertex, ...]]:
    """The faces 2-colored like the first face (the dual of an Eulerian triangulation is bipartite)."""
    face_list = faces(H)
    by_edge: Dict[Edge, List[int]] = {}
    for i, face in enumerate(face_list):
        for a, b in zip(face, face[1:] + face[:1]):
            by_edge.setdefault(edge_key(a, b), []).append(i)
    dual = nx.Graph()
    dual.add_nodes_from(range(len(face_list)))
    dual.add_edges_from(tuple(pair) for pair in by_edge.values())
    side = nx.bipartite.color(dual)
    return [face for i, face in enumerate(face_list) if side[i] == side[0]]


def octahedron_replacement(H: PlaneGraph) -> ReplacementResult:
    """
    Replace one color class of faces of an Eulerian triangulation by octahedra.

    The new vertex of the i-th sorted edge uv of H gets label max(V(H)) + 1 + i; it is
    joined to u, v and the two other new vertices of its triangle. |V| = 4|V(H)| - 6.

    Raises:
        GeneratorParameterError: If H is not an Eulerian triangulation.
    """
    if not is_triangulation(H) or any(H.degree(v) % 2 for v in H.vertices):
        raise GeneratorParameterError(f"{H.name or 'graph'} is not an Eulerian triangulation")
    H = H if H.has_rotation else embed(H)
    first = max(H.vertices) + 1
    label = {e: first + i for i, e in enumerate(H.edges)}
    edges = list(H.edges)
    octahedra = []
    for a, b, c in _face_class(H):
        x, y, z = label[edge_key(b, c)], label[edge_key(a, c)], label[edge_key(a, b)]
        edges += [(b, x), (c, x), (a, y), (c, y), (a, z), (b, z), (x, y), (y, z), (x, z)]
        octahedra.append(tuple(sorted((a, b, c, x, y, z))))
    graph = _planar(list(H.vertices) + list(label.values()), [edge_key(u, v) for u, v in edges],
                    f"octahedron-replacement({H.name or 'graph'})")
    return ReplacementResult(graph=graph, host=H, octahedra=tuple(sorted(octahedra)))


def replacement_lower_bound(result: ReplacementResult, node_budget: Optional[int] = None) -> int:
    """
    Number of edge-disjoint octahedra verified not acyclically 4-colorable: every deletion set
    making the graph acyclically 4-colorable meets each of them.

    Raises:
        GeneratorParameterError: If the parts do not partition the edges or a part is colorable.
    """
    parts = result.parts()
    covered = [e for part in parts for e in part.edges]
    if len(covered) != len(set(covered)) or set(covered) != set(result.graph.edges):
        raise GeneratorParameterError("octahedra do not partition the edge set")
    for part in parts:
        status = search_coloring(part, 4, require_acyclic=True, node_budget=node_budget).status
        if status != SearchStatus.NONE:
            raise GeneratorParameterError(f"{part.name} is not certified acyclically non-4-colorable ({status.value})")
    return len(parts)


def glue_along_face(G1: PlaneGraph, f1: Sequence[Vertex], G2: PlaneGraph, f2: Sequence[Vertex]) -> PlaneGraph:
    """
    Identify face f2 of G2 with face f1 of G1 (f2[i] onto f1[i]); the other vertices of G2
    are relabeled after max(V(G1)) in label order.

    Raises:
        GeneratorParameterError: If f1 or f2 is not a facial triangle.
    """
    for G, f in ((G1, f1), (G2, f2)):
        if len(set(f)) != 3 or not any(set(face) == set(f) for face in faces(G if G.has_rotation else embed(G))):
            raise GeneratorParameterError(f"{list(f)} is not a facial triangle of {G.name or 'graph'}")
    mapping = dict(zip(f2, f1))
    nxt = max(G1.vertices) + 1
    for v in G2.vertices:
        if v not in mapping:
            mapping[v] = nxt
            nxt += 1
    edges = set(G1.edges) | {edge_key(mapping[u], mapping[v]) for u, v in G2.edges}
    return _planar(sorted(set(G1.vertices) | set(mapping.values())), sorted(edges), f"{G1.name or 'G1'}+{G2.name or 'G2'}")


def _refined_classes(G: PlaneGraph) -> List[List[Vertex]]:
    """Vertex classes from degree refinement, in a labeling-independent order."""
    color = {v: (G.degree(v),) for v in G.vertices}
    while True:
        signature = {v: (color[v], tuple(sorted(color[u] for u in G.adjacency[v]))) for v in G.vertices}
        names = {s: i for i, s in enumerate(sorted(set(signature.values())))}
        refined = {v: (names[signature[v]],) for v in G.vertices}
        if len(set(refined.values())) == len(set(color.values())):
            break
        color = refined
    classes: Dict[Tuple, List[Vertex]] = {}
    for v in G.vertices:
        classes.setdefault(signature[v], []).append(v)
    return [classes[key] for key in sorted(classes)]


def canonical_form(G: PlaneGraph) -> Tuple[int, Tuple[Edge, ...]]:
    """
    Isomorphism invariant: the lexicographically smallest sorted edge list over all
    relabelings that number vertices class by class after degree refinement.
    """
    classes = _refined_classes(G)
    best: Optional[Tuple[Edge, ...]] = None
    for orders in product(*(permutations(c) for c in classes)):
        mapping = {v: i for i, v in enumerate(v for order in orders for v in order)}
        edges = tuple(sorted(edge_key(mapping[u], mapping[v]) for u, v in G.edges))
        if best is None or edges < best:
            best = edges
    return G.n, best or ()


def catalog_small(max_n: int = 6) -> List[PlaneGraph]:
    """
    Isomorph-free list of plane triangulations on 3..max_n vertices, by enumerating planar
    edge sets of size 3n - 6 (for n >= 3 these are exactly the triangulations).
    """
    if max_n > 7:
        raise GeneratorParameterError(f"catalog enumeration is limited to n <= 7, got {max_n}")
    catalog: List[PlaneGraph] = []
    for n in range(3, max_n + 1):
        found: Dict[Tuple, PlaneGraph] = {}
        for chosen in combinations(list(combinations(range(n), 2)), 3 * n - 6):
            graph = nx.Graph(chosen)
            if graph.number_of_nodes() != n or not nx.is_connected(graph) or not nx.check_planarity(graph)[0]:
                continue
            candidate = PlaneGraph.from_edges(range(n), chosen, triangulation=True)
            key = canonical_form(candidate)
            if key not in found:
                found[key] = candidate
        for i, key in enumerate(sorted(found)):
            catalog.append(embed(found[key].renamed(f"catalog-{n}-{i}")))
    return catalog


@dataclass(frozen=True)
class InstanceDescriptor:
    """
    Attributes:
        family: Registry name of the generator.
        parameters: Generator arguments.
        graph: The generated graph (always with a rotation system).
        provenance: Generator version and seed.
    """

    family: str
    parameters: Mapping[str, int]
    graph: PlaneGraph
    provenance: str = ""

    def regenerate(self) -> "InstanceDescriptor":
        return generate(self.family, dict(self.parameters))


@dataclass(frozen=True)
class Family:
    builder: Callable[..., PlaneGraph]
    parameters: Tuple[str, ...] = ()
    seeded: bool = False
    description: str = ""


def _glued_even_double_wheels(n1: int, n2: int) -> PlaneGraph:
    first, second = even_double_wheel(n1), even_double_wheel(n2)
    face1 = faces(first)[0]
    face2 = faces(second)[0]
    return glue_along_face(first, face1, second, face2).renamed(f"glued-even-double-wheels-{n1}-{n2}")


FAMILIES: Dict[str, Family] = {
    "k3": Family(k3, description="triangle"),
    "k4": Family(k4, description="complete graph on four vertices"),
    "octahedron": Family(octahedron, description="octahedron"),
    "icosahedron": Family(icosahedron, description="icosahedron"),
    "double-wheel": Family(double_wheel, ("n",), description="odd cycle plus two hubs (n odd, >= 7)"),
    "even-double-wheel": Family(even_double_wheel, ("n",), description="even cycle plus two hubs (n even, >= 6)"),
    "stacked-k4": Family(stacked_k4, description="K4 with a vertex stacked into a face"),
    "stacked-chain": Family(stacked_chain, ("t",), description="t K4s glued in a path"),
    "random-triangulation": Family(random_triangulation, ("n",), seeded=True,
                                   description="random stacked triangulation"),
    "octahedron-replacement": Family(lambda n: octahedron_replacement(even_double_wheel(n)).graph, ("n",),
                                     description="octahedron replacement of even-double-wheel(n)"),
    "glued-even-double-wheels": Family(_glued_even_double_wheels, ("n1", "n2"),
                                       description="two even double wheels glued along a face"),
}


def generate(family: str, params: Optional[Mapping[str, int]] = None, seed: int = 0) -> InstanceDescriptor:
    """
    Raises:
        GeneratorParameterError: On an unknown family or wrong parameters.
    """
    if family not in FAMILIES:
        raise GeneratorParameterError(f"unknown family {family!r}, expected one of {sorted(FAMILIES)}")
    entry = FAMILIES[family]
    params = dict(params or {})
    if entry.seeded:
        params["seed"] = params.get("seed", seed)
    names = entry.parameters + (("seed",) if entry.seeded else ())
    if set(params) != set(names):
        raise GeneratorParameterError(f"family {family} takes parameters {list(names)}, got {sorted(params)}")
    graph = entry.builder(**params)
    return InstanceDescriptor(
        family=family,
        parameters={name: params[name] for name in names},
        graph=graph,
        provenance=f"defcol {get_version()}" + (f" seed={params['seed']}" if entry.seeded else ""),
    )
