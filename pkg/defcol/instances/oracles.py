"""
Brute-force oracles for desk-scale instances. They share no code with the formula-based
operations they cross-check, apart from the coloring enumerator.
"""

import math
import os
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from defcol.coloring import Coloring, is_acyclic, require_proper
from defcol.coloring_search import SearchStatus, iter_colorings, search_coloring
from defcol.logger import Logger
from defcol.plane_graph import Edge, PlaneGraph, Vertex, subdivide
from defcol.transversal import TransversalCertificate, make_certificate, m_value, normalize_u

INFINITY = math.inf
DEFAULT_MAX_N = 9
DEFAULT_MAX_EDGES = 18


class SizeGuardError(ValueError):
    pass


@dataclass(frozen=True)
class OracleLimits:
    """
    Attributes:
        max_n: Largest vertex count for coloring enumeration.
        max_edges: Largest edge count for edge-subset enumeration.
    """

    max_n: int = DEFAULT_MAX_N
    max_edges: int = DEFAULT_MAX_EDGES

    @classmethod
    def from_environment(cls, max_n: int = DEFAULT_MAX_N, max_edges: int = DEFAULT_MAX_EDGES) -> "OracleLimits":
        """ORACLE_MAX_N and ORACLE_MAX_EDGES override the given limits (unsafe for runtime)."""
        return cls(
            max_n=int(os.environ.get("ORACLE_MAX_N", max_n)),
            max_edges=int(os.environ.get("ORACLE_MAX_EDGES", max_edges)),
        )


def _guard(G: PlaneGraph, limits: Optional[OracleLimits], edges: bool = False) -> None:
    limits = limits or OracleLimits.from_environment()
    if G.n > limits.max_n:
        raise SizeGuardError(f"{G.name or 'graph'} has {G.n} vertices, oracle limit is {limits.max_n}")
    if edges and G.m > limits.max_edges:
        raise SizeGuardError(f"{G.name or 'graph'} has {G.m} edges, oracle limit is {limits.max_edges}")


def _is_forest(edges: Iterable[Edge]) -> bool:
    graph = nx.Graph()
    graph.add_edges_from(edges)
    return nx.is_forest(graph) if graph.number_of_nodes() else True


def _pair_minimum(edges: List[Edge]) -> int:
    """Fewest edges whose removal leaves a forest, by subsets of increasing size."""
    for size in range(len(edges) + 1):
        for removed in combinations(edges, size):
            dropped = set(removed)
            if _is_forest(e for e in edges if e not in dropped):
                return size
    return len(edges)


def brute_m(G: PlaneGraph, phi: Coloring, limits: Optional[OracleLimits] = None) -> int:
    """
    Minimum transversal size for a fixed coloring; the color pairs are independent, so each
    bichromatic subgraph is minimized separately by subset enumeration.

    Raises:
        SizeGuardError: If G exceeds the oracle limits.
    """
    _guard(G, limits)
    require_proper(G, phi)
    by_pair: Dict[Tuple[int, int], List[Edge]] = {}
    for u, v in G.edges:
        pair = tuple(sorted((phi[u], phi[v])))
        by_pair.setdefault(pair, []).append((u, v))
    return sum(_pair_minimum(edges) for _, edges in sorted(by_pair.items()))


def brute_m_k(G: PlaneGraph, k: int, limits: Optional[OracleLimits] = None, log: Optional[Logger] = None) -> float:
    """Minimum of brute_m over all proper k-colorings up to color permutation; INFINITY if none."""
    _guard(G, limits)
    best = INFINITY
    count = 0
    for phi in iter_colorings(G, k):
        count += 1
        best = min(best, brute_m(G, phi, limits))
        if best == 0:
            break
    if log is not None:
        log.debug(f"brute m_{k}({G.name or 'graph'}) = {best} over {count} coloring(s)")
    return best


class _DeletionOracle:
    """Iterative deepening over edge subsets with a memo keyed by the remaining edge set."""

    def __init__(self, G: PlaneGraph, k: int, subdivide_edges: bool):
        self.G = G
        self.k = k
        self.subdivide_edges = subdivide_edges
        self._memo: Dict[frozenset, bool] = {}

    def _colorable(self, chosen: Tuple[Edge, ...]) -> bool:
        key = frozenset(chosen)
        if key not in self._memo:
            graph = subdivide(self.G, chosen) if self.subdivide_edges else self.G.without_edges(chosen)
            result = search_coloring(graph, self.k, require_acyclic=True)
            self._memo[key] = result.status == SearchStatus.FOUND
        return self._memo[key]

    def minimum(self) -> float:
        for size in range(self.G.m + 1):
            for chosen in combinations(self.G.edges, size):
                if self._colorable(chosen):
                    return size
        return INFINITY


def brute_m_prime(G: PlaneGraph, k: int, limits: Optional[OracleLimits] = None) -> float:
    """Fewest edges whose deletion makes G acyclically k-colorable."""
    _guard(G, limits, edges=True)
    return _DeletionOracle(G, k, subdivide_edges=False).minimum()


def brute_m_dprime(G: PlaneGraph, k: int, limits: Optional[OracleLimits] = None) -> float:
    """
    Fewest edges whose subdivision by one vertex each makes G acyclically k-colorable.
    Unlike m_k it stays finite when G has no proper k-coloring.
    """
    _guard(G, limits, edges=True)
    return _DeletionOracle(G, k, subdivide_edges=True).minimum()


def brute_optimal_u_acyclic(G: PlaneGraph, phi: Coloring, u_set: Sequence[Vertex] = (),
                            limits: Optional[OracleLimits] = None) -> Optional[TransversalCertificate]:
    """First (in lexicographic order) U-acyclic transversal of size exactly m(G, phi), or None."""
    _guard(G, limits, edges=True)
    u = normalize_u(G, u_set)
    m = m_value(G, phi)
    members = set(u)
    for chosen in combinations(G.edges, m):
        if not _is_forest(chosen):
            continue
        graph = nx.Graph(chosen)
        if any(nx.has_path(graph, a, b) for a, b in combinations(sorted(members & set(graph.nodes)), 2)):
            continue
        if is_acyclic(G.without_edges(chosen), phi):
            return make_certificate(G, phi, chosen, u, optimal=True, method="exhaustive")
    return None
