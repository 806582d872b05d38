"""
Edge deletions that make a triangulation acyclically 4- and 3-colorable.

Starting from an acyclic 5-coloring, the color class with the smallest excess degree is
recolored: each of its vertices keeps edges to three neighbours of distinct colors, loses the
rest, and takes the one color of the remaining four missing among those three. The same
step with pairs of neighbours turns the acyclic 4-coloring into an acyclic 3-coloring.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from math import floor
from typing import Dict, Iterable, List, Optional, Set, Tuple

from defcol.checks import ValidationReport
from defcol.coloring import (
    Coloring,
    ColoringInconsistencyError,
    is_acyclic,
    is_proper,
    require_proper,
)
from defcol.coloring_search import SearchStatus, iter_colorings, search_coloring
from defcol.logger import Logger
from defcol.plane_graph import (
    Edge,
    GraphError,
    PlaneGraph,
    Vertex,
    complete_to_triangulation,
    edge_key,
    ensure_rotation,
    is_triangulation,
    require_triangulation,
)

FIVE_COLORING_SOURCES = ("search", "supplied", "proper-then-reject")


class DefectPreconditionError(ValueError):
    pass


class AveragingBoundError(RuntimeError):
    pass


class SearchBudgetExhausted(RuntimeError):
    pass


def four_color_bound(n: int) -> Fraction:
    return Fraction(3 * n - 12, 5)


def three_color_bound(n: int) -> Fraction:
    return Fraction(13 * n - 42, 10)


@dataclass(frozen=True)
class DefectReport:
    """
    Attributes:
        k: Target palette size (4 or 3).
        deleted: Deleted edges (cumulative for k = 3), sorted.
        coloring: Acyclic k-coloring of G minus the deleted edges.
        bound: Upper bound on the number of deletions.
        source: Where the initial acyclic 5-coloring came from.
        recolored_class: The color class that was recolored.
    """

    k: int
    deleted: Tuple[Edge, ...]
    coloring: Coloring
    bound: Fraction
    source: str
    recolored_class: Optional[int] = None

    @property
    def size(self) -> int:
        return len(self.deleted)

    @property
    def met(self) -> bool:
        return self.size <= self.bound

    @property
    def integer_bound(self) -> int:
        return floor(self.bound)


def _cheapest_class(G: PlaneGraph, phi: Coloring, palette: int, keep: int) -> Tuple[int, int, Fraction]:
    """Class minimizing the sum of max(0, d - keep) (ties to the smallest color), its cost and the average."""
    costs = {c: 0 for c in range(1, palette + 1)}
    for v in G.vertices:
        costs[phi[v]] += max(0, G.degree(v) - keep)
    chosen = min(costs, key=lambda c: (costs[c], c))
    return chosen, costs[chosen], Fraction(sum(costs.values()), palette)


def _recolor_class(G: PlaneGraph, phi: Coloring, palette: int, keep: int, chosen: int) -> Tuple[List[Edge], Coloring]:
    """
    Keep `keep` neighbours of pairwise distinct colors for every vertex of the chosen class
    (lexicographically smallest such set), delete its other edges and recolor it with the
    color missing among the kept neighbours; the highest color is finally renamed to the
    chosen one.
    """
    deleted: List[Edge] = []
    assignment: Dict[Vertex, int] = dict(phi.assignment)
    others = set(range(1, palette + 1)) - {chosen}
    for v in G.vertices:
        if phi[v] != chosen:
            continue
        neighbours = G.neighbors(v)
        if len(neighbours) <= keep:
            kept = neighbours
        else:
            kept = next((group for group in combinations(neighbours, keep)
                         if len({phi[u] for u in group}) == keep), None)
        seen = {phi[u] for u in kept} if kept is not None else set()
        if kept is None or len(seen) < len(kept):
            raise DefectPreconditionError(
                f"vertex {v} sees fewer than {keep} distinct colors among its neighbours"
            )
        deleted.extend(edge_key(v, u) for u in neighbours if u not in kept)
        assignment[v] = min(others - seen)
    if chosen != palette:
        assignment = {v: chosen if c == palette else c for v, c in assignment.items()}
    return sorted(deleted), Coloring.from_dict(assignment, k=palette - 1)


def _check_result(G: PlaneGraph, deleted: Iterable[Edge], phi: Coloring, stage: str) -> None:
    remaining = G.without_edges(deleted)
    if not is_proper(remaining, phi) or not is_acyclic(remaining, phi):
        raise ColoringInconsistencyError(f"{stage} produced a coloring that is not acyclic")


def _require_acyclic_input(G: PlaneGraph, phi: Coloring, palette: int) -> None:
    require_proper(G, phi)
    if any(phi[v] > palette for v in G.vertices):
        raise DefectPreconditionError(f"input coloring uses colors above {palette}")
    if not is_acyclic(G, phi):
        raise DefectPreconditionError(f"input {palette}-coloring is not acyclic")


def reduce_to_four(G: PlaneGraph, phi5: Coloring, source: str = "supplied", log: Optional[Logger] = None) -> DefectReport:
    """
    Raises:
        NotATriangulationError: If G is not a triangulation.
        DefectPreconditionError: If phi5 is not an acyclic coloring with colors 1..5.
        AveragingBoundError: If the cheapest class exceeds the average (cannot happen).
    """
    require_triangulation(G)
    _require_acyclic_input(G, phi5, 5)
    chosen, cost, average = _cheapest_class(G, phi5, 5, 3)
    if cost > average:
        raise AveragingBoundError(f"class {chosen} costs {cost} > average {average}")
    deleted, coloring = _recolor_class(G, phi5, 5, 3, chosen)
    _check_result(G, deleted, coloring, "4-color reduction")
    if log is not None:
        log.debug(f"4-color reduction: recolored class {chosen}, deleted {len(deleted)} edge(s)")
    return DefectReport(k=4, deleted=tuple(deleted), coloring=coloring, bound=four_color_bound(G.n),
                        source=source, recolored_class=chosen)


def reduce_to_three(G_reduced: PlaneGraph, phi4: Coloring, prior_deleted: Iterable[Tuple[Vertex, Vertex]] = (),
                    source: str = "supplied", log: Optional[Logger] = None) -> DefectReport:
    """
    G_reduced is a triangulation minus prior_deleted; the report's deletions are cumulative.

    Raises:
        DefectPreconditionError: If phi4 is not acyclic with colors 1..4, or a recolored
        vertex with at least two neighbours sees only one color.
        AveragingBoundError: If the cheapest class exceeds the average (cannot happen).
    """
    _require_acyclic_input(G_reduced, phi4, 4)
    chosen, cost, average = _cheapest_class(G_reduced, phi4, 4, 2)
    if cost > average:
        raise AveragingBoundError(f"class {chosen} costs {cost} > average {average}")
    deleted, coloring = _recolor_class(G_reduced, phi4, 4, 2, chosen)
    _check_result(G_reduced, deleted, coloring, "3-color reduction")
    total = sorted({edge_key(u, v) for u, v in prior_deleted} | set(deleted))
    if log is not None:
        log.debug(f"3-color reduction: recolored class {chosen}, deleted {len(deleted)} more edge(s)")
    return DefectReport(k=3, deleted=tuple(total), coloring=coloring, bound=three_color_bound(G_reduced.n),
                        source=source, recolored_class=chosen)


def triangulate_for_defect(G: PlaneGraph) -> Tuple[PlaneGraph, List[Edge]]:
    """
    A plane triangulation containing G as a spanning subgraph, and the edges added.

    Raises:
        GraphError: If G has fewer than 3 vertices.
        NotPlanarError: If G is not planar.
    """
    if G.n < 3:
        raise GraphError(f"cannot triangulate a graph on {G.n} vertices")
    G = ensure_rotation(G)
    if is_triangulation(G):
        return G, []
    return complete_to_triangulation(G)


def acyclic_five_coloring(T: PlaneGraph, source: str = "search", supplied: Optional[Coloring] = None,
                          node_budget: Optional[int] = None, threads: int = 1, parallel_depth: int = 0,
                          log: Optional[Logger] = None) -> Coloring:
    """
    Raises:
        SearchBudgetExhausted: If the search did not finish within node_budget.
        DefectPreconditionError: If a supplied coloring is unusable or no coloring exists.
    """
    if source not in FIVE_COLORING_SOURCES:
        raise ValueError(f"unknown 5-coloring source {source!r}, expected one of {FIVE_COLORING_SOURCES}")
    if source == "supplied":
        if supplied is None:
            raise DefectPreconditionError("source 'supplied' needs a coloring")
        _require_acyclic_input(T, supplied, 5)
        return supplied
    if source == "search":
        result = search_coloring(T, 5, require_acyclic=True, node_budget=node_budget, threads=threads,
                                 parallel_depth=parallel_depth, log=log)
        if result.status == SearchStatus.BUDGET_EXHAUSTED:
            raise SearchBudgetExhausted(f"acyclic 5-coloring search exceeded {node_budget} nodes")
        if result.coloring is None:
            raise DefectPreconditionError(f"{T.name or 'graph'} has no acyclic 5-coloring")
        return result.coloring
    for tried, phi in enumerate(iter_colorings(T, 5), start=1):
        if is_acyclic(T, phi):
            return phi
        if node_budget is not None and tried >= node_budget:
            break
    raise SearchBudgetExhausted(f"no acyclic coloring among the first {node_budget} proper 5-colorings")


def defect_bounds(G: PlaneGraph, five_coloring: Optional[Coloring] = None, source: Optional[str] = None,
                  node_budget: Optional[int] = None, threads: int = 1, parallel_depth: int = 0,
                  log: Optional[Logger] = None) -> Tuple[DefectReport, DefectReport]:
    """
    Both reductions on a triangulation completing G; edges added by the completion are
    never reported as deletions.

    Raises:
        SearchBudgetExhausted: If the acyclic 5-coloring search ran out of budget.
    """
    source = source or ("supplied" if five_coloring is not None else "search")
    T, added = triangulate_for_defect(G)
    if added and log is not None:
        log.debug(f"completed {G.name or 'graph'} to a triangulation with {len(added)} edge(s)")
    phi5 = acyclic_five_coloring(T, source, five_coloring, node_budget, threads, parallel_depth, log)
    four = reduce_to_four(T, phi5, source=source, log=log)
    three = reduce_to_three(T.without_edges(four.deleted), four.coloring, four.deleted, source=source, log=log)
    original: Set[Edge] = set(G.edge_set)
    return (
        replace(four, deleted=tuple(e for e in four.deleted if e in original)),
        replace(three, deleted=tuple(e for e in three.deleted if e in original)),
    )


def verify_defect_report(G: PlaneGraph, report: DefectReport) -> ValidationReport:
    """Never raises on a failed check."""
    checks = ValidationReport()
    outside = [e for e in report.deleted if e not in G.edge_set]
    checks.add("edges_in_graph", not outside, "" if not outside else f"edges not in graph: {outside[:5]}")
    remaining = G.without_edges(report.deleted)
    palette_ok = all(1 <= report.coloring[v] <= report.k for v in G.vertices if v in report.coloring.assignment)
    total = all(v in report.coloring.assignment for v in G.vertices)
    checks.add("palette", total and palette_ok, f"coloring must be total with colors 1..{report.k}")
    if total:
        proper = is_proper(remaining, report.coloring)
        checks.add("proper", proper)
        checks.add("acyclic", proper and is_acyclic(remaining, report.coloring))
    checks.add("bound", report.met, f"{report.size} deletion(s) vs bound {report.bound} (floor {report.integer_bound})")
    return checks
