"""
U-acyclic transversals: 2-colored-cycle transversals that induce a forest in which no path
joins two distinct vertices of U.

An edge set is a minimum transversal iff it is a basis of the dual of the direct sum of the
graphic matroids of the bichromatic subgraphs, and it is U-acyclic iff it is independent in
the graphic matroid of G with U identified to one vertex. `exchange_transversal` finds a
common independent set of size m(G, phi) by shortest augmenting paths.
`constructive_u_acyclic_transversal` follows the inductive construction for planar graphs
and triangulations instead, lifting the transversal of a smaller graph at every level.
"""

from collections import deque
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
from networkx.utils import UnionFind

from defcol.coloring import Coloring, require_proper
from defcol.decomposition import separating_triangles
from defcol.logger import Logger
from defcol.plane_graph import (
    Edge,
    PlaneGraph,
    RewriteError,
    Vertex,
    clique_separator,
    complete_to_triangulation,
    contract_path,
    delete_and_retriangulate,
    edge_key,
    ensure_rotation,
    faces,
    identify_vertices,
    is_triangulation,
    link_cycle,
)
from defcol.transversal import (
    TransversalCertificate,
    is_u_acyclic_transversal,
    m_value,
    make_certificate,
    min_transversal,
    normalize_u,
    pair_of,
    used_colors,
)

DEFAULT_EXCHANGE_LIMIT = 10000


class ConstructionError(RuntimeError):
    pass


def _augmenting_path(G: PlaneGraph, pair_edges: Dict[Tuple[int, int], List[Edge]], current: Set[Edge],
                     image) -> Optional[List[Edge]]:
    """Shortest path in the exchange graph from the cographic sources to the graphic sinks."""
    sources: Set[Edge] = set()
    cographic_arcs: Dict[Edge, List[Edge]] = {}
    for edges in pair_edges.values():
        rest = nx.Graph()
        rest.add_edges_from(e for e in edges if e not in current)
        bridges = {edge_key(a, b) for a, b in nx.bridges(rest)}
        removed = [y for y in edges if y in current]
        for x in edges:
            if x in current:
                continue
            if x not in bridges:
                sources.add(x)
                continue
            rest.remove_edge(*x)
            side = nx.node_connected_component(rest, x[0])
            rest.add_edge(*x)
            for y in removed:
                if (y[0] in side) != (y[1] in side):
                    cographic_arcs.setdefault(y, []).append(x)

    forest = nx.Graph()
    owner: Dict[Edge, Edge] = {}
    for y in current:
        a, b = image(y[0]), image(y[1])
        forest.add_edge(a, b)
        owner[edge_key(a, b)] = y
    component = {v: i for i, c in enumerate(nx.connected_components(forest)) for v in c}
    sinks: Set[Edge] = set()
    graphic_arcs: Dict[Edge, List[Edge]] = {}
    for x in G.edges:
        if x in current:
            continue
        a, b = image(x[0]), image(x[1])
        if a == b:
            continue
        if a not in component or b not in component or component[a] != component[b]:
            sinks.add(x)
            continue
        path = nx.shortest_path(forest, a, b)
        graphic_arcs[x] = [owner[edge_key(p, q)] for p, q in zip(path, path[1:])]

    parent: Dict[Edge, Optional[Edge]] = {}
    queue = deque()
    for s in sorted(sources):
        parent[s] = None
        queue.append(s)
    while queue:
        node = queue.popleft()
        if node in sinks:
            path = [node]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path
        arcs = cographic_arcs.get(node, []) if node in current else graphic_arcs.get(node, [])
        for nxt in sorted(arcs):
            if nxt not in parent:
                parent[nxt] = node
                queue.append(nxt)
    return None


def exchange_transversal(G: PlaneGraph, phi: Coloring, u_set: Sequence[Vertex] = (),
                         exchange_limit: int = DEFAULT_EXCHANGE_LIMIT,
                         log: Optional[Logger] = None) -> Optional[Tuple[Edge, ...]]:
    """
    A U-acyclic transversal of size m(G, phi) by matroid intersection.

    Starts from the U-acyclic part of min_transversal and augments along shortest exchange
    sequences.

    Returns:
        The edges, or None when exchange_limit augmentations were not enough.

    Raises:
        ConstructionError: If no U-acyclic transversal exists at all (only possible for
        non-planar input or a U that is not a clique).
    """
    require_proper(G, phi)
    target = m_value(G, phi)
    members = set(u_set)
    root = min(members) if members else None

    def image(x: Vertex) -> Vertex:
        return root if x in members else x

    pair_edges: Dict[Tuple[int, int], List[Edge]] = {}
    for e in G.edges:
        pair_edges.setdefault(pair_of(phi, e), []).append(e)

    current: Set[Edge] = set()
    forest = UnionFind()
    for u, v in min_transversal(G, phi).edges:
        a, b = image(u), image(v)
        if a != b and forest[a] != forest[b]:
            forest.union(a, b)
            current.add((u, v))

    augmentations = 0
    while len(current) < target:
        if augmentations >= exchange_limit:
            if log is not None:
                log.debug(f"exchange limit {exchange_limit} reached at size {len(current)} of {target}")
            return None
        path = _augmenting_path(G, pair_edges, current, image)
        if path is None:
            raise ConstructionError(
                f"no U-acyclic transversal exists for U = {sorted(members)}: "
                f"largest U-acyclic part of a minimum transversal has {len(current)} of {target} edges"
            )
        current.symmetric_difference_update(path)
        augmentations += 1
    if log is not None:
        log.debug(f"exchange transversal of size {target} after {augmentations} augmentation(s)")
    return tuple(sorted(current))


class _Constructor:
    """
    The inductive construction. Every lifted set is checked before it is returned; a check
    failure raises ConstructionError with debug_lifting and otherwise falls back to the exact
    exchange solver for that level.
    """

    def __init__(self, phi: Coloring, exchange_limit: int, debug_lifting: bool, log: Optional[Logger]):
        self.phi = phi
        self.exchange_limit = exchange_limit
        self.debug_lifting = debug_lifting
        self.log = log
        self.repairs = 0

    def _debug(self, msg: str, depth: int) -> None:
        if self.log is not None:
            self.log.debug(msg, indent=depth)

    def _exact(self, G: PlaneGraph, u_set: Sequence[Vertex], reason: str, depth: int) -> Set[Edge]:
        self._debug(f"n={G.n}: exact solve ({reason})", depth)
        edges = exchange_transversal(G, self.phi, u_set, self.exchange_limit)
        if edges is None:
            raise ConstructionError(f"exchange limit reached on a {G.n}-vertex graph ({reason})")
        return set(edges)

    def _checked(self, G: PlaneGraph, u_set: Sequence[Vertex], candidates: Iterable[Set[Edge]],
                 step: str, depth: int) -> Set[Edge]:
        for edges in candidates:
            if is_u_acyclic_transversal(G, self.phi, edges, u_set):
                self._debug(f"n={G.n}: {step} lifted to {len(edges)} edge(s)", depth)
                return edges
        if self.debug_lifting:
            raise ConstructionError(f"{step} on a {G.n}-vertex graph produced no valid lift (U = {list(u_set)})")
        self.repairs += 1
        if self.log is not None:
            self.log.warning(f"{step} on a {G.n}-vertex graph produced no valid lift, solving that level exactly")
        return self._exact(G, u_set, f"repair after {step}", depth)

    @staticmethod
    def _lift_merged(G: PlaneGraph, sub: Iterable[Edge], keep: Vertex, gone: Vertex,
                     special: Sequence[Vertex]) -> Optional[Tuple[Set[Edge], Set[Vertex]]]:
        """
        Map edges of the merged graph back to G; edges from the merged vertex to `special`
        vertices are ambiguous and reported separately.
        """
        base: Set[Edge] = set()
        flagged: Set[Vertex] = set()
        for x, y in sub:
            if keep not in (x, y):
                base.add(edge_key(x, y))
                continue
            other = y if x == keep else x
            if other in special:
                flagged.add(other)
                continue
            owners = [z for z in (keep, gone) if G.has_edge(z, other)]
            if len(owners) != 1:
                return None
            base.add(edge_key(owners[0], other))
        return base, flagged

    def _path_end(self, G: PlaneGraph, reduced: PlaneGraph, sub: Set[Edge], keep: Vertex, gone: Vertex,
                  v2: Vertex) -> Optional[Vertex]:
        """Which of keep/gone the 2-colored path from the merged vertex to v2 leaves from."""
        colors = {self.phi[keep], self.phi[v2]}
        remaining = nx.Graph()
        remaining.add_edges_from(e for e in reduced.edges
                                 if e not in sub and {self.phi[e[0]], self.phi[e[1]]} <= colors)
        if keep not in remaining or v2 not in remaining or not nx.has_path(remaining, keep, v2):
            return None
        path = nx.shortest_path(remaining, keep, v2)
        owners = [z for z in (keep, gone) if G.has_edge(z, path[1])]
        return owners[0] if len(owners) == 1 else None

    def _four_cycle_candidates(self, G: PlaneGraph, reduced: PlaneGraph, sub: Set[Edge], v1: Vertex, v2: Vertex,
                               v3: Vertex, v4: Vertex, extra: Set[Edge]) -> List[Set[Edge]]:
        lifted = self._lift_merged(G, sub, v1, v3, (v2, v4))
        if lifted is None:
            return []
        base, flagged = lifted
        base |= extra
        if not flagged:
            return [base | {edge_key(vj, v2)} for vj in (v1, v3)]
        if len(flagged) == 1:
            vi = next(iter(flagged))
            return [base | {edge_key(v1, vi), edge_key(v3, vi)}]
        j = self._path_end(G, reduced, sub, v1, v3, v2)
        order = (v1, v3) if j in (None, v1) else (v3, v1)
        return [base | {edge_key(vj, v2), edge_key(v1, v4), edge_key(v3, v4)} for vj in order]

    # general planar graphs

    def general(self, G: PlaneGraph, u_set: Tuple[Vertex, ...], depth: int = 0) -> Set[Edge]:
        if G.n <= len(used_colors(G, self.phi)):
            return set()
        if G.n <= 6:
            return self._exact(G, u_set, "small graph", depth)

        separator = clique_separator(G)
        if separator is not None:
            return self._checked(G, u_set, [self._split(G, u_set, separator, depth)], "clique separator split", depth)

        saturated, added = complete_to_triangulation(G, lambda x, y: self.phi[x] != self.phi[y])
        if added:
            self._debug(f"n={G.n}: saturated with {len(added)} edge(s)", depth)
            edges = self.general(saturated, u_set, depth + 1)
            return self._checked(G, u_set, [{e for e in edges if e in G.edge_set}], "saturation", depth)

        if is_triangulation(saturated):
            face = next((f for f in faces(saturated) if set(u_set) <= set(f)), None)
            if face is None:
                return self._exact(saturated, u_set, "U is not facial", depth)
            return self.facial(saturated, tuple(face), depth + 1)
        return self._identify(saturated, u_set, depth)

    def _split(self, G: PlaneGraph, u_set: Tuple[Vertex, ...], separator: Tuple[Vertex, ...], depth: int) -> Set[Edge]:
        rest = G.to_networkx().subgraph(set(G.vertices) - set(separator))
        components = sorted((sorted(c) for c in nx.connected_components(rest)), key=lambda c: c[0])
        outside = [u for u in u_set if u not in separator]
        first = next((c for c in components if outside and outside[0] in c), components[0])
        second = [v for c in components if c is not first for v in c]
        G1 = G.subgraph(set(first) | set(separator))
        G2 = G.subgraph(set(second) | set(separator))
        self._debug(f"n={G.n}: split on clique {list(separator)} into {G1.n} + {G2.n}", depth)
        return self.general(G1, u_set, depth + 1) | self.general(G2, tuple(separator), depth + 1)

    def _identify(self, G: PlaneGraph, u_set: Tuple[Vertex, ...], depth: int) -> Set[Edge]:
        for face in faces(G):
            if len(face) != 4:
                continue
            for s in (0, 1):
                v1, v2, v3, v4 = face[s], face[s + 1], face[(s + 2) % 4], face[(s + 3) % 4]
                if self.phi[v1] != self.phi[v3] or self.phi[v2] != self.phi[v4]:
                    continue
                if v1 in u_set and v3 in u_set:
                    continue
                if not (G.adjacency[v1] & G.adjacency[v3]) <= {v2, v4}:
                    continue
                try:
                    reduced = identify_vertices(G, v1, v3)
                except RewriteError:
                    continue
                reduced_u = tuple(sorted({v1 if x == v3 else x for x in u_set}))
                self._debug(f"n={G.n}: identify {v1} and {v3} on face {list(face)}", depth)
                sub = self.general(reduced, reduced_u, depth + 1)
                candidates = self._four_cycle_candidates(G, reduced, sub, v1, v2, v3, v4, set())
                return self._checked(G, u_set, candidates, "facial 4-cycle identification", depth)
        return self._exact(G, u_set, "no reducible facial 4-cycle", depth)

    # triangulations with a facial triangle F

    def facial(self, G: PlaneGraph, face: Tuple[Vertex, ...], depth: int = 0) -> Set[Edge]:
        if G.n <= max(6, len(used_colors(G, self.phi))):
            return self._exact(G, face, "small triangulation", depth)

        separating = separating_triangles(G)
        if separating:
            triangle = separating[0]
            rest = G.to_networkx().subgraph(set(G.vertices) - set(triangle))
            components = sorted((sorted(c) for c in nx.connected_components(rest)), key=lambda c: c[0])
            outside = [x for x in face if x not in triangle]
            first = next(c for c in components if outside[0] in c)
            second = [v for c in components if c is not first for v in c]
            G1 = G.subgraph(set(first) | set(triangle), triangulation=True)
            G2 = G.subgraph(set(second) | set(triangle), triangulation=True)
            self._debug(f"n={G.n}: split on separating triangle {list(triangle)}", depth)
            edges = self.facial(G1, face, depth + 1) | self.facial(G2, triangle, depth + 1)
            return self._checked(G, face, [edges], "separating triangle split", depth)

        for degree, step in ((4, self._degree_four), (5, self._degree_five)):
            for v in G.vertices:
                if v in face or G.degree(v) != degree:
                    continue
                edges = step(G, face, v, depth)
                if edges is not None:
                    return edges
        return self._exact(G, face, "no reducible vertex", depth)

    @staticmethod
    def _merged_face(G: PlaneGraph, face: Tuple[Vertex, ...], keep: Vertex, gone: Vertex) -> Optional[Tuple[Vertex, ...]]:
        merged = tuple(sorted({keep if x == gone else x for x in face}))
        if len(merged) != 3:
            return None
        if not any(set(f) == set(merged) for f in faces(G)):
            return None
        return merged

    def _degree_four(self, G: PlaneGraph, face: Tuple[Vertex, ...], v: Vertex, depth: int) -> Optional[Set[Edge]]:
        link = link_cycle(G, v)
        for s in (0, 1):
            v1, v2, v3, v4 = link[s], link[s + 1], link[s + 2], link[(s + 3) % 4]
            if not (G.adjacency[v1] & G.adjacency[v3]) <= {v, v2, v4}:
                continue
            if self.phi[v1] != self.phi[v3]:
                try:
                    reduced = delete_and_retriangulate(G, v, [(v1, v3)])
                except RewriteError:
                    continue
                self._debug(f"n={G.n}: delete degree-4 vertex {v}, add chord {v1}-{v3}", depth)
                sub = self.facial(reduced, face, depth + 1)
                lifted = (sub - {edge_key(v1, v3)}) | {edge_key(v, v2)}
                return self._checked(G, face, [lifted], "degree-4 deletion", depth)
            try:
                reduced = contract_path(G, v1, v, v3)
            except RewriteError:
                continue
            reduced_face = self._merged_face(reduced, face, v1, v3)
            if reduced_face is None:
                continue
            self._debug(f"n={G.n}: contract {v1}-{v}-{v3} at degree-4 vertex {v}", depth)
            sub = self.facial(reduced, reduced_face, depth + 1)
            candidates = self._four_cycle_candidates(G, reduced, sub, v1, v2, v3, v4, {edge_key(v, v2)})
            return self._checked(G, face, candidates, "degree-4 contraction", depth)
        return None

    def _degree_five(self, G: PlaneGraph, face: Tuple[Vertex, ...], v: Vertex, depth: int) -> Optional[Set[Edge]]:
        link = link_cycle(G, v)
        orders = [tuple(link[(r + d * i) % 5] for i in range(5)) for r in range(5) for d in (1, -1)]
        colors = {self.phi[x] for x in link}
        for v1, v2, v3, v4, v5 in orders:
            if len(colors) == 3:
                if self.phi[v1] != self.phi[v3] or self.phi[v2] != self.phi[v4]:
                    continue
                if not (G.adjacency[v1] & G.adjacency[v3]) <= {v, v2}:
                    continue
                try:
                    reduced = contract_path(G, v1, v, v3)
                except RewriteError:
                    continue
                reduced_face = self._merged_face(reduced, face, v1, v3)
                if reduced_face is None:
                    continue
                self._debug(f"n={G.n}: contract {v1}-{v}-{v3} at degree-5 vertex {v}", depth)
                sub = self.facial(reduced, reduced_face, depth + 1)
                lifted = self._lift_merged(G, sub, v1, v3, (v2,))
                if lifted is None:
                    candidates = []
                else:
                    base, flagged = lifted
                    base.add(edge_key(v, v2))
                    candidates = [base | {edge_key(v1, v2), edge_key(v2, v3)}] if flagged else [base]
                return self._checked(G, face, candidates, "degree-5 contraction", depth)
            if len({self.phi[v1], self.phi[v2], self.phi[v3], self.phi[v4]}) != 4:
                continue
            if G.has_edge(v1, v3) or G.has_edge(v1, v4):
                continue
            try:
                reduced = delete_and_retriangulate(G, v, [(v1, v3), (v1, v4)])
            except RewriteError:
                continue
            self._debug(f"n={G.n}: delete degree-5 vertex {v}, add chords {v1}-{v3} and {v1}-{v4}", depth)
            sub = self.facial(reduced, face, depth + 1)
            lifted = (sub - {edge_key(v1, v3), edge_key(v1, v4)}) | {edge_key(v, v5)}
            return self._checked(G, face, [lifted], "degree-5 deletion", depth)
        return None


def constructive_u_acyclic_transversal(G: PlaneGraph, phi: Coloring, u_set: Iterable[Vertex] = (),
                                       exchange_limit: int = DEFAULT_EXCHANGE_LIMIT, debug_lifting: bool = False,
                                       log: Optional[Logger] = None) -> TransversalCertificate:
    """
    U-acyclic transversal by the inductive construction (size at most n - |used|).

    Raises:
        NotACliqueError: If U is not a clique of at most three vertices.
        ConstructionError: If a lifting step fails with debug_lifting on.
    """
    u = normalize_u(G, u_set)
    require_proper(G, phi)
    constructor = _Constructor(phi, exchange_limit, debug_lifting, log)
    edges = constructor.general(ensure_rotation(G), u)
    method = "constructive" if not constructor.repairs else f"constructive ({constructor.repairs} repaired level(s))"
    return make_certificate(G, phi, edges, u, optimal=False, method=method)


def u_acyclic_transversal(G: PlaneGraph, phi: Coloring, u_set: Iterable[Vertex] = (),
                          exchange_limit: int = DEFAULT_EXCHANGE_LIMIT, debug_lifting: bool = False,
                          log: Optional[Logger] = None) -> TransversalCertificate:
    """
    Optimal-size U-acyclic transversal; falls back to the construction when the exchange
    limit is hit, in which case the certificate is not flagged optimal.

    Raises:
        NotACliqueError: If U is not a clique of at most three vertices.
        ImproperColoringError: If phi is not proper.
    """
    u = normalize_u(G, u_set)
    require_proper(G, phi)
    edges = exchange_transversal(G, phi, u, exchange_limit, log)
    if edges is not None:
        return make_certificate(G, phi, edges, u, optimal=True, method="matroid-intersection")
    if log is not None:
        log.warning(f"exchange limit {exchange_limit} reached on {G.name or 'graph'}, using the constructive bound")
    return constructive_u_acyclic_transversal(G, phi, u, exchange_limit, debug_lifting, log)
