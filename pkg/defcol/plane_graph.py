"""
Plane graphs: simple undirected graphs with an optional rotation system (cyclic
neighbour order at every vertex), plus the rewrites the inductive constructions use.

Rotation convention: walking along a face, the dart (u -> v) is followed by
(v -> w) where w is the successor of u in the rotation at v.
"""

from dataclasses import dataclass, replace
from functools import cached_property
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from defcol.checks import ValidationReport

Vertex = int
Edge = Tuple[int, int]
Rotation = Mapping[int, Tuple[int, ...]]
PairFilter = Callable[[int, int], bool]


class GraphError(ValueError):
    pass


class NotATriangulationError(GraphError):
    pass


class MissingRotationError(GraphError):
    pass


class RewriteError(GraphError):
    pass


class NotPlanarError(GraphError):
    pass


def edge_key(u: Vertex, v: Vertex) -> Edge:
    """Canonical (smaller, larger) form of an undirected edge."""
    if u == v:
        raise GraphError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def _cyclic_from_min(seq: Sequence[Vertex]) -> Tuple[Vertex, ...]:
    if not seq:
        return ()
    start = seq.index(min(seq))
    return tuple(seq[start:]) + tuple(seq[:start])


def _normalized_rotation(rotation: Optional[Rotation]) -> Optional[Dict[Vertex, Tuple[Vertex, ...]]]:
    if rotation is None:
        return None
    return {v: _cyclic_from_min(list(order)) for v, order in sorted(rotation.items())}


@dataclass(frozen=True)
class RewriteRecord:
    """
    Provenance of a vertex-merging rewrite.

    Attributes:
        kind: "contract" (path v1 v v3 contracted) or "identify" (two face vertices identified).
        merged: The labels that disappeared into `into`, in the order they were given.
        into: The surviving label.
        original: The graph before the rewrite.
    """

    kind: str
    merged: Tuple[Vertex, ...]
    into: Vertex
    original: "PlaneGraph"


@dataclass(frozen=True, eq=False)
class PlaneGraph:
    """
    Immutable simple graph with an optional rotation system.

    Attributes:
        adjacency: Neighbour set of every vertex.
        rotation: Optional cyclic neighbour order of every vertex, normalized to start
        at the smallest neighbour.
        triangulation: Marked-triangulation flag (checked by `validate`, not trusted).
        name: Free-form instance name used in reports.
        provenance: Rewrite records, oldest first.
    """

    adjacency: Mapping[Vertex, FrozenSet[Vertex]]
    rotation: Optional[Rotation] = None
    triangulation: bool = False
    name: str = ""
    provenance: Tuple[RewriteRecord, ...] = ()

    @classmethod
    def from_edges(
        cls,
        vertices: Iterable[Vertex],
        edges: Iterable[Tuple[Vertex, Vertex]],
        rotation: Optional[Rotation] = None,
        triangulation: bool = False,
        name: str = "",
        provenance: Tuple[RewriteRecord, ...] = (),
    ) -> "PlaneGraph":
        adjacency: Dict[Vertex, Set[Vertex]] = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if v in adjacency.setdefault(u, set()):
                raise GraphError(f"parallel edge {edge_key(u, v)}")
            adjacency[u].add(v)
            adjacency.setdefault(v, set()).add(u)
        return cls(
            adjacency={v: frozenset(ns) for v, ns in sorted(adjacency.items())},
            rotation=_normalized_rotation(rotation),
            triangulation=triangulation,
            name=name,
            provenance=provenance,
        )

    @classmethod
    def _build(cls, adjacency: Mapping[Vertex, Iterable[Vertex]], rotation: Optional[Rotation], **kwargs) -> "PlaneGraph":
        return cls(
            adjacency={v: frozenset(ns) for v, ns in sorted(adjacency.items())},
            rotation=_normalized_rotation(rotation),
            **kwargs,
        )

    @cached_property
    def vertices(self) -> Tuple[Vertex, ...]:
        return tuple(sorted(self.adjacency))

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted((u, v) for u, ns in self.adjacency.items() for v in ns if u < v))

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def has_rotation(self) -> bool:
        return self.rotation is not None

    def degree(self, v: Vertex) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: Vertex) -> Tuple[Vertex, ...]:
        return tuple(sorted(self.adjacency[v]))

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return u in self.adjacency and v in self.adjacency[u]

    @cached_property
    def _nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph

    def to_networkx(self) -> nx.Graph:
        """Read-only networkx view; copy it before mutating."""
        return self._nx_graph

    def is_connected(self) -> bool:
        return self.n <= 1 or nx.is_connected(self._nx_graph)

    def with_rotation(self, rotation: Optional[Rotation]) -> "PlaneGraph":
        return replace(self, rotation=_normalized_rotation(rotation))

    def renamed(self, name: str) -> "PlaneGraph":
        return replace(self, name=name)

    def subgraph(self, vertices: Iterable[Vertex], triangulation: bool = False, name: Optional[str] = None) -> "PlaneGraph":
        """Induced subgraph; the rotation system is restricted, which keeps it planar."""
        keep = set(vertices)
        missing = keep - set(self.adjacency)
        if missing:
            raise GraphError(f"vertices not in graph: {sorted(missing)}")
        adjacency = {v: self.adjacency[v] & keep for v in keep}
        rotation = None
        if self.rotation is not None:
            rotation = {v: tuple(u for u in self.rotation[v] if u in keep) for v in keep}
        return PlaneGraph._build(adjacency, rotation, triangulation=triangulation,
                                 name=self.name if name is None else name)

    def without_edges(self, edges: Iterable[Tuple[Vertex, Vertex]]) -> "PlaneGraph":
        removed = {edge_key(u, v) for u, v in edges}
        adjacency = {v: set(ns) for v, ns in self.adjacency.items()}
        for u, v in removed:
            adjacency[u].discard(v)
            adjacency[v].discard(u)
        rotation = None
        if self.rotation is not None:
            rotation = {v: tuple(u for u in order if edge_key(u, v) not in removed)
                        for v, order in self.rotation.items()}
        return PlaneGraph._build(adjacency, rotation, name=self.name)

    def relabeled(self, mapping: Mapping[Vertex, Vertex], name: Optional[str] = None) -> "PlaneGraph":
        adjacency = {mapping[v]: {mapping[u] for u in ns} for v, ns in self.adjacency.items()}
        if len(adjacency) != self.n:
            raise GraphError("relabeling is not injective")
        rotation = None
        if self.rotation is not None:
            rotation = {mapping[v]: tuple(mapping[u] for u in order) for v, order in self.rotation.items()}
        return PlaneGraph._build(adjacency, rotation, triangulation=self.triangulation,
                                 name=self.name if name is None else name)

    def relabeled_contiguous(self) -> "PlaneGraph":
        """Relabel to 0..n-1 preserving label order."""
        return self.relabeled({v: i for i, v in enumerate(self.vertices)})

    def origin(self, v: Vertex) -> Tuple[Vertex, ...]:
        """All labels of the oldest recorded graph that were merged into v."""
        labels = {v}
        for record in reversed(self.provenance):
            if record.into in labels:
                labels.update(record.merged)
        return tuple(sorted(labels))


GraphLike = Union[PlaneGraph, nx.Graph]


def _require_rotation(G: PlaneGraph) -> Rotation:
    if G.rotation is None:
        raise MissingRotationError(f"graph {G.name or '<unnamed>'} has no rotation system")
    return G.rotation


def faces(G: PlaneGraph) -> List[Tuple[Vertex, ...]]:
    """
    Facial walks of the rotation system, each starting at its smallest vertex, sorted.

    Raises:
        MissingRotationError: If G carries no rotation system.
    """
    rotation = _require_rotation(G)
    position = {v: {u: i for i, u in enumerate(order)} for v, order in rotation.items()}
    seen: Set[Tuple[Vertex, Vertex]] = set()
    walks = []
    for u in G.vertices:
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                order_b = rotation[b]
                a, b = b, order_b[(position[b][a] + 1) % len(order_b)]
            walks.append(_cyclic_from_min(walk))
    return sorted(walks)


def validate(G: PlaneGraph, expect_triangulation: bool = False) -> ValidationReport:
    """
    Structural checks; never raises and never mutates G.

    Triangulation validity: n >= 3, |E| = 3n - 6, connected, and either every face of the
    rotation system is a triangle with Euler's formula holding, or (without rotation) the
    graph is planar.
    """
    report = ValidationReport()
    loops = [v for v, ns in G.adjacency.items() if v in ns]
    asymmetric = [(u, v) for u, ns in G.adjacency.items() for v in ns
                  if v not in G.adjacency or u not in G.adjacency[v]]
    report.add("simple", not loops and not asymmetric,
               "" if not loops and not asymmetric else f"loops at {loops[:3]}, asymmetric pairs {asymmetric[:3]}")
    simple = report.passed("simple")

    connected = simple and G.is_connected()
    report.add("connected", connected, "" if connected else "graph is disconnected")

    face_list: Optional[List[Tuple[Vertex, ...]]] = None
    if G.rotation is not None:
        bad = [v for v in G.vertices
               if v not in G.rotation or len(G.rotation[v]) != G.degree(v) or set(G.rotation[v]) != G.adjacency[v]]
        report.add("rotation", not bad, "" if not bad else f"rotation disagrees with adjacency at {bad[:5]}")
        if not bad and simple:
            face_list = faces(G)
            report.info["faces"] = len(face_list)
            if connected:
                euler = G.n - G.m + len(face_list)
                report.add("euler", euler == 2 or G.m == 0,
                           f"n - |E| + |F| = {G.n} - {G.m} + {len(face_list)} = {euler}")

    if expect_triangulation:
        messages = []
        if G.n < 3:
            messages.append(f"n = {G.n} < 3")
        elif G.m != 3 * G.n - 6:
            messages.append(f"edge count {G.m} != 3n-6 = {3 * G.n - 6}")
        if not connected:
            messages.append("not connected")
        if not messages:
            if face_list is not None:
                long_faces = [f for f in face_list if len(f) != 3]
                if long_faces or not report.passed("euler"):
                    messages.append(f"non-triangular faces {long_faces[:3]}" if long_faces else "Euler check failed")
            elif G.rotation is None:
                is_planar, _ = nx.check_planarity(G.to_networkx())
                if not is_planar:
                    messages.append("not planar")
            else:
                messages.append("rotation system is inconsistent")
        report.add("triangulation", not messages, "; ".join(messages))
    return report


def is_triangulation(G: PlaneGraph) -> bool:
    return validate(G, expect_triangulation=True).ok


def require_triangulation(G: PlaneGraph) -> None:
    report = validate(G, expect_triangulation=True)
    if not report.ok:
        details = "; ".join(f"{c.name}: {c.message}" for c in report.failures)
        raise NotATriangulationError(f"{G.name or 'graph'} is not a triangulation ({details})")


def is_two_connected(H: GraphLike) -> bool:
    """2-connectivity; graphs with fewer than 3 vertices are never 2-connected."""
    graph = H.to_networkx() if isinstance(H, PlaneGraph) else H
    if graph.number_of_nodes() < 3:
        return False
    return nx.is_biconnected(graph)


def _orient_like(rotation: Dict[Vertex, Tuple[Vertex, ...]], reference: Optional[Rotation]) -> Dict[Vertex, Tuple[Vertex, ...]]:
    """Mirror `rotation` if it disagrees in orientation with `reference` on an unchanged vertex."""
    if reference is None:
        return rotation
    for v, order in rotation.items():
        old = reference.get(v)
        if old is None or len(order) < 3 or set(old) != set(order):
            continue
        if _cyclic_from_min(list(old)) == _cyclic_from_min(list(order)):
            return rotation
        return {u: tuple(reversed(o)) for u, o in rotation.items()}
    return rotation


def embed(G: PlaneGraph, reference: Optional[Rotation] = None) -> PlaneGraph:
    """
    Attach a rotation system computed by networkx's planarity test.

    Raises:
        NotPlanarError: If G is not planar.
    """
    is_planar, embedding = nx.check_planarity(G.to_networkx())
    if not is_planar:
        raise NotPlanarError(f"{G.name or 'graph'} is not planar")
    rotation = {v: tuple(embedding.neighbors_cw_order(v)) if G.degree(v) else () for v in G.vertices}
    rotation = _orient_like(rotation, reference if reference is not None else G.rotation)
    return G.with_rotation(rotation)


def ensure_rotation(G: PlaneGraph) -> PlaneGraph:
    return G if G.rotation is not None else embed(G)


def link_cycle(G: PlaneGraph, v: Vertex) -> Tuple[Vertex, ...]:
    """Cyclic order of N(v) around v (the link cycle in a triangulation)."""
    return ensure_rotation(G).rotation[v]


def _rebuilt(G: PlaneGraph, adjacency: Mapping[Vertex, Iterable[Vertex]], records: Tuple[RewriteRecord, ...]) -> PlaneGraph:
    result = PlaneGraph._build(adjacency, None, name=G.name, provenance=records)
    if G.rotation is not None:
        result = embed(result, reference=G.rotation)
    triangulation = G.triangulation and result.n >= 3 and result.m == 3 * result.n - 6
    return replace(result, triangulation=triangulation)


def contract_path(G: PlaneGraph, v1: Vertex, v: Vertex, v3: Vertex) -> PlaneGraph:
    """
    Contract the path v1 v v3 into a single vertex that keeps the label v1.

    Raises:
        RewriteError: If v is not adjacent to both ends, if v1 and v3 are adjacent (loop),
        or if v1 and v3 share a neighbour outside N[v] (parallel edge).
    """
    if v1 == v3 or not (G.has_edge(v, v1) and G.has_edge(v, v3)):
        raise RewriteError(f"{v1}-{v}-{v3} is not a path in {G.name or 'graph'}")
    if G.has_edge(v1, v3):
        raise RewriteError(f"contracting {v1}-{v}-{v3} would create a loop ({v1} and {v3} are adjacent)")
    extra = (G.adjacency[v1] & G.adjacency[v3]) - G.adjacency[v] - {v}
    if extra:
        raise RewriteError(
            f"contracting {v1}-{v}-{v3} would create a parallel edge: common neighbour(s) {sorted(extra)}"
        )
    path = {v1, v, v3}
    adjacency: Dict[Vertex, Set[Vertex]] = {}
    for u, ns in G.adjacency.items():
        if u in (v, v3):
            continue
        if u == v1:
            adjacency[u] = set(G.adjacency[v1] | G.adjacency[v] | G.adjacency[v3]) - path
            continue
        adjacency[u] = set(ns) - {v, v3}
        if ns & path:
            adjacency[u].add(v1)
    record = RewriteRecord(kind="contract", merged=(v, v3), into=v1, original=G)
    return _rebuilt(G, adjacency, G.provenance + (record,))


def undo_contraction(G: PlaneGraph) -> PlaneGraph:
    """Inverse of the most recent contract_path / identify_vertices, via its provenance record."""
    if not G.provenance:
        raise RewriteError(f"{G.name or 'graph'} carries no rewrite provenance")
    return G.provenance[-1].original


def identify_vertices(G: PlaneGraph, a: Vertex, b: Vertex) -> PlaneGraph:
    """
    Identify two opposite vertices of a facial 4-cycle; the result keeps label a.

    Raises:
        RewriteError: If a and b are adjacent, not opposite on a facial 4-cycle, or share
        neighbours besides the two other vertices of that face.
    """
    G = ensure_rotation(G)
    if a == b or G.has_edge(a, b):
        raise RewriteError(f"cannot identify adjacent vertices {a} and {b}")
    allowed: Optional[Set[Vertex]] = None
    for face in faces(G):
        if len(face) == 4 and len(set(face)) == 4 and a in face and b in face:
            i, j = face.index(a), face.index(b)
            if abs(i - j) == 2:
                allowed = set(face) - {a, b}
                break
    if allowed is None:
        raise RewriteError(f"{a} and {b} are not opposite on a facial 4-cycle")
    extra = (G.adjacency[a] & G.adjacency[b]) - allowed
    if extra:
        raise RewriteError(f"{a} and {b} have extra common neighbour(s) {sorted(extra)}")
    adjacency: Dict[Vertex, Set[Vertex]] = {}
    for u, ns in G.adjacency.items():
        if u == b:
            continue
        if u == a:
            adjacency[u] = set(G.adjacency[a] | G.adjacency[b])
            continue
        adjacency[u] = set(ns) - {b}
        if b in ns:
            adjacency[u].add(a)
    record = RewriteRecord(kind="identify", merged=(b,), into=a, original=G)
    return _rebuilt(G, adjacency, G.provenance + (record,))


def delete_and_retriangulate(G: PlaneGraph, v: Vertex, chords: Iterable[Tuple[Vertex, Vertex]]) -> PlaneGraph:
    """
    Delete a degree-4 or degree-5 vertex and triangulate its hole with the given chords.

    Raises:
        RewriteError: On a wrong degree, a chord that is already an edge, or chords that do
        not triangulate the hole.
    """
    link = link_cycle(G, v)
    d = len(link)
    if d not in (4, 5):
        raise RewriteError(f"vertex {v} has degree {d}, expected 4 or 5")
    chord_list = sorted({edge_key(x, y) for x, y in chords})
    position = {u: i for i, u in enumerate(link)}
    for x, y in chord_list:
        if G.has_edge(x, y):
            raise RewriteError(f"chord {x}-{y} is already an edge")
        if x not in position or y not in position:
            raise RewriteError(f"chord {x}-{y} does not join two neighbours of {v}")
    if len(chord_list) != d - 3:
        raise RewriteError(f"the hole of a degree-{d} vertex needs {d - 3} chord(s), got {len(chord_list)}")
    for (x1, y1), (x2, y2) in combinations(chord_list, 2):
        i, j = sorted((position[x1], position[y1]))
        k, l = sorted((position[x2], position[y2]))
        if i < k < j < l or k < i < l < j:
            raise RewriteError(f"chords {x1}-{y1} and {x2}-{y2} cross")
    adjacency = {u: set(ns) - {v} for u, ns in G.adjacency.items() if u != v}
    for x, y in chord_list:
        adjacency[x].add(y)
        adjacency[y].add(x)
    return _rebuilt(G, adjacency, G.provenance)


def subdivide(G: PlaneGraph, edges: Iterable[Tuple[Vertex, Vertex]]) -> PlaneGraph:
    """Replace every listed edge by a path of length two through a fresh vertex."""
    chosen = sorted({edge_key(u, v) for u, v in edges})
    for u, v in chosen:
        if not G.has_edge(u, v):
            raise GraphError(f"edge {u}-{v} is not in the graph")
    next_label = (max(G.vertices) + 1) if G.n else 0
    adjacency = {v: set(ns) for v, ns in G.adjacency.items()}
    rotation = dict(G.rotation) if G.rotation is not None else None
    for offset, (u, v) in enumerate(chosen):
        x = next_label + offset
        adjacency[u].discard(v)
        adjacency[v].discard(u)
        adjacency[u].add(x)
        adjacency[v].add(x)
        adjacency[x] = {u, v}
        if rotation is not None:
            rotation[u] = tuple(x if w == v else w for w in rotation[u])
            rotation[v] = tuple(x if w == u else w for w in rotation[v])
            rotation[x] = (u, v)
    return PlaneGraph._build(adjacency, rotation, name=f"{G.name}+subdivided" if G.name else "")


def complete_to_triangulation(G: PlaneGraph, pair_filter: Optional[PairFilter] = None) -> Tuple[PlaneGraph, List[Edge]]:
    """
    Add chords inside faces until no face admits one, keeping the embedding.

    Chords join two distinct non-adjacent vertices of a common face that pass
    `pair_filter`; faces and pairs are scanned in sorted order. Without a filter the result
    is a plane triangulation spanning G (for n >= 3).

    Returns:
        The saturated graph and the added edges in insertion order.
    """
    G = ensure_rotation(G)
    adjacency = {v: set(ns) for v, ns in G.adjacency.items()}
    rotation = {v: tuple(order) for v, order in G.rotation.items()}
    admissible = pair_filter or (lambda x, y: True)
    added: List[Edge] = []

    components = sorted((sorted(c) for c in nx.connected_components(G.to_networkx())), key=lambda c: c[0])
    if components:
        joined = list(components[0])
        for component in components[1:]:
            pair = next(((x, y) for x in joined for y in component if admissible(x, y)), None)
            if pair is not None:
                x, y = pair
                adjacency[x].add(y)
                adjacency[y].add(x)
                rotation[x] = rotation[x] + (y,)
                rotation[y] = rotation[y] + (x,)
                added.append(edge_key(x, y))
            joined.extend(component)

    while True:
        current = PlaneGraph._build(adjacency, rotation)
        chord = None
        for walk in faces(current):
            length = len(walk)
            if length <= 3:
                continue
            for i, j in combinations(range(length), 2):
                x, y = walk[i], walk[j]
                if x != y and y not in adjacency[x] and admissible(x, y):
                    chord = (walk, i, j)
                    break
            if chord is not None:
                break
        if chord is None:
            break
        walk, i, j = chord
        x, y = walk[i], walk[j]
        for corner, target in ((i, y), (j, x)):
            vertex = walk[corner]
            previous = walk[corner - 1]
            order = rotation[vertex]
            at = order.index(previous)
            rotation[vertex] = order[:at + 1] + (target,) + order[at + 1:]
        adjacency[x].add(y)
        adjacency[y].add(x)
        added.append(edge_key(x, y))

    n = len(adjacency)
    m = sum(len(ns) for ns in adjacency.values()) // 2
    result = PlaneGraph._build(adjacency, rotation, triangulation=n >= 3 and m == 3 * n - 6,
                               name=G.name, provenance=G.provenance)
    return result, added


def clique_separator(G: PlaneGraph) -> Optional[Tuple[Vertex, ...]]:
    """
    Smallest vertex set W (|W| <= 3, inducing a clique) with G - W disconnected.

    Returns () for a disconnected graph, None when no such separator exists.
    """
    graph = G.to_networkx()
    if G.n <= 1:
        return None
    if not nx.is_connected(graph):
        return ()
    all_vertices = set(G.vertices)

    def separates(W: Tuple[Vertex, ...]) -> bool:
        rest = all_vertices - set(W)
        return len(rest) >= 2 and not nx.is_connected(graph.subgraph(rest))

    cut_vertices = sorted(nx.articulation_points(graph))
    if cut_vertices:
        return (cut_vertices[0],)
    for e in G.edges:
        if separates(e):
            return e
    for u, v in G.edges:
        for w in sorted(G.adjacency[u] & G.adjacency[v]):
            if w > v and separates((u, v, w)):
                return (u, v, w)
    return None
