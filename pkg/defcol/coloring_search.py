"""
Exact backtracking search for proper and acyclic k-colorings.

Vertices are colored in a fixed breadth-first order. With symmetry breaking, a vertex
may only take a color already in use or the smallest unused one, so every coloring is
produced once per orbit of color permutations.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence

from defcol.coloring import Coloring
from defcol.logger import Logger
from defcol.plane_graph import PlaneGraph, Vertex


class SearchStatus(str, Enum):
    FOUND = "found"
    NONE = "none"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class SearchResult:
    """
    Attributes:
        status: FOUND, NONE (no coloring exists) or BUDGET_EXHAUSTED (undecided).
        coloring: The coloring when found.
        nodes: Number of search nodes visited.
    """

    status: SearchStatus
    coloring: Optional[Coloring] = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == SearchStatus.FOUND


class _BudgetExhausted(Exception):
    pass


def search_order(G: PlaneGraph) -> List[Vertex]:
    """Breadth-first order from the smallest vertex of every component, neighbours sorted."""
    order: List[Vertex] = []
    seen = set()
    for root in G.vertices:
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in G.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return order


class ColoringBacktracker:
    """
    Depth-first enumeration of k-colorings of G.

    Attributes:
        graph: The graph being colored.
        k: Palette size.
        require_acyclic: Prune assignments that close a 2-colored cycle.
        break_symmetry: Introduce colors in increasing order.
        node_budget: Maximal number of search nodes, None for unlimited.
        nodes: Search nodes visited so far.
    """

    def __init__(self, graph: PlaneGraph, k: int, require_acyclic: bool = False,
                 break_symmetry: bool = True, node_budget: Optional[int] = None):
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        self.graph = graph
        self.k = k
        self.require_acyclic = require_acyclic
        self.break_symmetry = break_symmetry
        self.node_budget = node_budget
        self.order = search_order(graph)
        self.nodes = 0
        self._assignment: Dict[Vertex, int] = {}

    def _closes_cycle(self, v: Vertex, color: int) -> bool:
        """Whether coloring v with `color` closes a 2-colored cycle among colored vertices."""
        by_color: Dict[int, List[Vertex]] = {}
        for u in self.graph.neighbors(v):
            c = self._assignment.get(u)
            if c is not None:
                by_color.setdefault(c, []).append(u)
        for other, same in by_color.items():
            if len(same) < 2:
                continue
            # search the colored (color, other) subgraph without v
            targets = set(same[1:])
            seen = {same[0]}
            stack = [same[0]]
            while stack:
                x = stack.pop()
                for y in self.graph.adjacency[x]:
                    if y == v or y in seen:
                        continue
                    if self._assignment.get(y) not in (color, other):
                        continue
                    if y in targets:
                        return True
                    seen.add(y)
                    stack.append(y)
        return False

    def _candidates(self, index: int) -> Sequence[int]:
        if not self.break_symmetry:
            return range(1, self.k + 1)
        highest = max(self._assignment.values(), default=0)
        return range(1, min(self.k, highest + 1) + 1)

    def _extend(self, index: int) -> Iterator[Dict[Vertex, int]]:
        if index == len(self.order):
            yield dict(self._assignment)
            return
        v = self.order[index]
        taken = {self._assignment[u] for u in self.graph.adjacency[v] if u in self._assignment}
        for color in self._candidates(index):
            if color in taken:
                continue
            self.nodes += 1
            if self.node_budget is not None and self.nodes > self.node_budget:
                raise _BudgetExhausted()
            if self.require_acyclic and self._closes_cycle(v, color):
                continue
            self._assignment[v] = color
            yield from self._extend(index + 1)
            del self._assignment[v]

    def colorings(self, prefix: Optional[Dict[Vertex, int]] = None) -> Iterator[Coloring]:
        """
        Lazily enumerate colorings extending `prefix` (an assignment of a prefix of `order`).

        Raises:
            _BudgetExhausted: Internally, when the node budget runs out.
        """
        self._assignment = dict(prefix or {})
        for assignment in self._extend(len(self._assignment)):
            yield Coloring.from_dict(assignment, k=self.k)

    def prefixes(self, depth: int) -> List[Dict[Vertex, int]]:
        """Valid partial assignments of the first `depth` vertices, in search order."""
        depth = min(depth, len(self.order))
        saved_order = self.order
        self.order = saved_order[:depth]
        try:
            self._assignment = {}
            return list(self._extend(0))
        finally:
            self.order = saved_order
            self._assignment = {}


def iter_colorings(G: PlaneGraph, k: int, require_acyclic: bool = False,
                   break_symmetry: bool = True) -> Iterator[Coloring]:
    """All proper (optionally acyclic) colorings into 1..k, one per color-permutation orbit by default."""
    return ColoringBacktracker(G, k, require_acyclic=require_acyclic, break_symmetry=break_symmetry).colorings()


def _search_branch(G: PlaneGraph, k: int, require_acyclic: bool, node_budget: Optional[int],
                   prefix: Optional[Dict[Vertex, int]]) -> SearchResult:
    backtracker = ColoringBacktracker(G, k, require_acyclic=require_acyclic, node_budget=node_budget)
    try:
        coloring = next(backtracker.colorings(prefix), None)
    except _BudgetExhausted:
        return SearchResult(status=SearchStatus.BUDGET_EXHAUSTED, nodes=backtracker.nodes)
    if coloring is None:
        return SearchResult(status=SearchStatus.NONE, nodes=backtracker.nodes)
    return SearchResult(status=SearchStatus.FOUND, coloring=coloring, nodes=backtracker.nodes)


def search_coloring(G: PlaneGraph, k: int, require_acyclic: bool = False, node_budget: Optional[int] = None,
                    threads: int = 1, parallel_depth: int = 0, log: Optional[Logger] = None) -> SearchResult:
    """
    Find one proper (optionally acyclic) k-coloring.

    With threads > 1 and parallel_depth > 0 the branches below the first
    `parallel_depth` vertices are searched in `threads` worker processes. The node budget
    is split evenly across the branches, and the result is the first branch, in search
    order, that found a coloring; branches after it are cancelled if not yet started.

    Returns:
        SearchResult whose status distinguishes "no coloring" from "budget exhausted".
    """
    if threads <= 1 or parallel_depth <= 0 or G.n <= parallel_depth:
        result = _search_branch(G, k, require_acyclic, node_budget, None)
    else:
        prefixes = ColoringBacktracker(G, k, require_acyclic=require_acyclic).prefixes(parallel_depth)
        branch_budget = None if node_budget is None else max(1, -(-node_budget // max(1, len(prefixes))))
        branches: List[SearchResult] = []
        with ProcessPoolExecutor(max_workers=threads) as executor:
            futures = [executor.submit(_search_branch, G, k, require_acyclic, branch_budget, prefix)
                       for prefix in prefixes]
            for future in futures:
                branches.append(future.result())
                if branches[-1].found:
                    executor.shutdown(wait=False, cancel_futures=True)
                    break
        nodes = sum(branch.nodes for branch in branches)
        found = next((branch for branch in branches if branch.found), None)
        if found is not None:
            result = SearchResult(status=SearchStatus.FOUND, coloring=found.coloring, nodes=nodes)
        elif any(branch.status == SearchStatus.BUDGET_EXHAUSTED for branch in branches):
            result = SearchResult(status=SearchStatus.BUDGET_EXHAUSTED, nodes=nodes)
        else:
            result = SearchResult(status=SearchStatus.NONE, nodes=nodes)
    if log is not None:
        log.debug(f"coloring search on {G.name or 'graph'} (k={k}, acyclic={require_acyclic}): "
                  f"{result.status.value} after {result.nodes} nodes")
    return result
