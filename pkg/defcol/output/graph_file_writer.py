from typing import Iterable, List, Optional, TextIO, Tuple

from defcol.coloring import Coloring
from defcol.graph_file_parser import NAME_PREFIX
from defcol.plane_graph import PlaneGraph, Vertex, edge_key


def _contiguous(G: PlaneGraph, coloring: Optional[Coloring]) -> Tuple[PlaneGraph, Optional[Coloring]]:
    if G.vertices == tuple(range(G.n)):
        return G, coloring
    mapping = {v: i for i, v in enumerate(G.vertices)}
    if coloring is not None:
        coloring = Coloring.from_dict({mapping[v]: c for v, c in coloring.assignment.items()}, k=coloring.k)
    return G.relabeled(mapping), coloring


def format_edges(edges: Iterable[Tuple[Vertex, Vertex]]) -> List[str]:
    """Sorted 'u v' lines, u < v."""
    return [f"{u} {v}" for u, v in sorted({edge_key(u, v) for u, v in edges})]


def format_coloring(coloring: Coloring, vertices: Iterable[Vertex]) -> List[str]:
    lines = [f"coloring {coloring.k}"]
    lines += [f"{v}: {coloring[v]}" for v in vertices]
    return lines


def format_graph(G: PlaneGraph, coloring: Optional[Coloring] = None) -> str:
    """
    Serialize G (relabeled to 0..n-1 if needed) with its rotation and an optional coloring.
    The output is stable: parsing it and formatting again gives the same text.
    """
    G, coloring = _contiguous(G, coloring)
    lines: List[str] = []
    if G.name:
        lines.append(f"{NAME_PREFIX} {G.name}")
    flags = []
    if G.has_rotation:
        flags.append("rotation")
    if G.triangulation:
        flags.append("triangulation")
    lines.append(" ".join([str(G.n), str(G.m)] + flags))
    lines += format_edges(G.edges)
    if G.has_rotation:
        lines.append("rotation")
        lines += [f"{v}: {' '.join(map(str, G.rotation[v]))}".rstrip() for v in G.vertices]
    if coloring is not None:
        lines += format_coloring(coloring, G.vertices)
    return "\n".join(lines) + "\n"


def write_graph(G: PlaneGraph, stream: TextIO, coloring: Optional[Coloring] = None) -> None:
    stream.write(format_graph(G, coloring))
