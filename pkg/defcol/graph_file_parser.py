"""
Reader for the line-oriented graph file format (see docs/GRAPH_FILE_FORMAT.md).

    # comment lines start with '#'; '# name: X' names the graph
    n m [rotation] [triangulation]
    u v                 (m lines, 0-based labels)
    rotation            (optional block, required when the header says so)
    v: c1 c2 ... cd
    coloring K          (optional block)
    v: c
"""

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Set, TextIO, Tuple, Union

from defcol.coloring import Coloring
from defcol.plane_graph import Edge, GraphError, PlaneGraph, Vertex, edge_key

HEADER_FLAGS = ("rotation", "triangulation")
NAME_PREFIX = "# name:"


class GraphFileReadError(Exception):
    """Raised when the input cannot be opened or read."""

    pass


class GraphFileParseError(Exception):
    """Raised when the input is not a well-formed graph file."""

    pass


@dataclass(frozen=True)
class GraphFile:
    graph: PlaneGraph
    coloring: Optional[Coloring] = None


class _Lines:
    """Non-comment, non-blank lines with their 1-based line numbers."""

    def __init__(self, text: str, source: str):
        self.source = source
        self.name = ""
        self._items: List[Tuple[int, str]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if line.startswith(NAME_PREFIX) and not self.name:
                self.name = line[len(NAME_PREFIX):].strip()
            if not line or line.startswith("#"):
                continue
            self._items.append((number, line))
        self._pos = 0

    def peek(self) -> Optional[Tuple[int, str]]:
        return self._items[self._pos] if self._pos < len(self._items) else None

    def next(self, what: str) -> Tuple[int, str]:
        item = self.peek()
        if item is None:
            raise GraphFileParseError(f"{self.source}: unexpected end of input, expected {what}")
        self._pos += 1
        return item

    def fail(self, number: int, msg: str) -> GraphFileParseError:
        return GraphFileParseError(f"{self.source}:{number}: {msg}")


def _ints(lines: _Lines, number: int, tokens: List[str], what: str) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise lines.fail(number, f"expected integers in {what}, got {' '.join(tokens)!r}")


def _parse_header(lines: _Lines) -> Tuple[int, int, Set[str]]:
    number, line = lines.next("header 'n m [rotation] [triangulation]'")
    tokens = line.split()
    if len(tokens) < 2:
        raise lines.fail(number, f"header needs 'n m', got {line!r}")
    n, m = _ints(lines, number, tokens[:2], "header")
    flags = set(tokens[2:])
    unknown = flags - set(HEADER_FLAGS)
    if unknown:
        raise lines.fail(number, f"unknown header flag(s): {', '.join(sorted(unknown))}")
    if n < 0 or m < 0:
        raise lines.fail(number, "negative counts in header")
    return n, m, flags


def _check_label(lines: _Lines, number: int, v: int, n: int) -> None:
    if not 0 <= v < n:
        raise lines.fail(number, f"vertex label {v} outside 0..{n - 1}")


def _parse_edges(lines: _Lines, n: int, m: int) -> List[Edge]:
    edges: List[Edge] = []
    seen: Set[Edge] = set()
    for _ in range(m):
        number, line = lines.next(f"{m} edge lines")
        tokens = line.split()
        if len(tokens) != 2:
            raise lines.fail(number, f"edge line must be 'u v', got {line!r}")
        u, v = _ints(lines, number, tokens, "edge line")
        _check_label(lines, number, u, n)
        _check_label(lines, number, v, n)
        if u == v:
            raise lines.fail(number, f"loop at vertex {u}")
        key = edge_key(u, v)
        if key in seen:
            raise lines.fail(number, f"duplicate edge {u} {v}")
        seen.add(key)
        edges.append(key)
    return edges


def _parse_map_line(lines: _Lines, number: int, line: str, n: int) -> Tuple[Vertex, List[int]]:
    head, sep, rest = line.partition(":")
    if not sep:
        raise lines.fail(number, f"block line must be 'v: ...', got {line!r}")
    (v,) = _ints(lines, number, [head.strip()], "block line")
    _check_label(lines, number, v, n)
    return v, _ints(lines, number, rest.split(), "block line")


def _parse_rotation(lines: _Lines, n: int, adjacency: Dict[Vertex, Set[Vertex]]) -> Dict[Vertex, Tuple[Vertex, ...]]:
    rotation: Dict[Vertex, Tuple[Vertex, ...]] = {}
    for _ in range(n):
        number, line = lines.next(f"{n} rotation lines")
        v, order = _parse_map_line(lines, number, line, n)
        if v in rotation:
            raise lines.fail(number, f"rotation for vertex {v} given twice")
        if len(order) != len(set(order)) or set(order) != adjacency[v]:
            raise lines.fail(number, f"rotation at {v} is not a cyclic order of its neighbours")
        rotation[v] = tuple(order)
    return rotation


def _parse_coloring(lines: _Lines, number: int, line: str, n: int) -> Coloring:
    tokens = line.split()
    if len(tokens) != 2:
        raise lines.fail(number, f"coloring block header must be 'coloring K', got {line!r}")
    (k,) = _ints(lines, number, tokens[1:], "coloring header")
    if k < 1:
        raise lines.fail(number, f"palette size must be positive, got {k}")
    assignment: Dict[Vertex, int] = {}
    for _ in range(n):
        number, line = lines.next(f"{n} coloring lines")
        v, colors = _parse_map_line(lines, number, line, n)
        if len(colors) != 1:
            raise lines.fail(number, f"coloring line must be 'v: c', got {line!r}")
        if v in assignment:
            raise lines.fail(number, f"color for vertex {v} given twice")
        if not 1 <= colors[0] <= k:
            raise lines.fail(number, f"color {colors[0]} of vertex {v} outside 1..{k}")
        assignment[v] = colors[0]
    return Coloring.from_dict(assignment, k=k)


def parse_graph_text(text: str, source: str = "<stdin>", name: Optional[str] = None) -> GraphFile:
    """
    Raises:
        GraphFileParseError: On any malformed header, edge line or block.
    """
    lines = _Lines(text, source)
    n, m, flags = _parse_header(lines)
    edges = _parse_edges(lines, n, m)
    adjacency: Dict[Vertex, Set[Vertex]] = {v: set() for v in range(n)}
    for u, v in edges:
        adjacency[u].add(v)
        adjacency[v].add(u)

    rotation = None
    coloring = None
    while lines.peek() is not None:
        number, line = lines.next("a block")
        keyword = line.split()[0]
        if keyword == "rotation" and rotation is None:
            rotation = _parse_rotation(lines, n, adjacency)
        elif keyword == "coloring" and coloring is None:
            coloring = _parse_coloring(lines, number, line, n)
        else:
            raise lines.fail(number, f"unexpected line {line!r}")
    if "rotation" in flags and rotation is None:
        raise GraphFileParseError(f"{source}: header announces a rotation block but none was found")

    if name is None:
        name = lines.name or ("" if source == "<stdin>" else Path(source).stem)
    try:
        graph = PlaneGraph.from_edges(range(n), edges, rotation=rotation,
                                      triangulation="triangulation" in flags, name=name)
    except GraphError as e:
        raise GraphFileParseError(f"{source}: {e}")
    return GraphFile(graph=graph, coloring=coloring)


def read_graph_file(path: Optional[Union[str, Path]] = None, stdin: Optional[TextIO] = None) -> GraphFile:
    """
    Read from `path`, or from standard input when path is None or '-'.

    Raises:
        GraphFileReadError: If the file cannot be read.
        GraphFileParseError: If its content is malformed.
    """
    if path is None or str(path) == "-":
        stream = stdin if stdin is not None else sys.stdin
        try:
            text = stream.read()
        except OSError as e:
            raise GraphFileReadError(f"<stdin>: {e}")
        return parse_graph_text(text, "<stdin>")
    file_path = Path(path)
    try:
        text = file_path.read_text()
    except (OSError, UnicodeDecodeError) as e:
        raise GraphFileReadError(f"{file_path}: {e}")
    return parse_graph_text(text, str(file_path))


def read_coloring_file(path: Union[str, Path], graph: PlaneGraph) -> Coloring:
    """A coloring-only file: an optional 'coloring K' header then 'v: c' lines."""
    file_path = Path(path)
    try:
        text = file_path.read_text()
    except (OSError, UnicodeDecodeError) as e:
        raise GraphFileReadError(f"{file_path}: {e}")
    lines = _Lines(text, str(file_path))
    first = lines.peek()
    if first is not None and first[1].split()[0] == "coloring":
        number, line = lines.next("coloring header")
        coloring = _parse_coloring(lines, number, line, graph.n)
    else:
        assignment: Dict[Vertex, int] = {}
        while lines.peek() is not None:
            number, line = lines.next("coloring line")
            v, colors = _parse_map_line(lines, number, line, graph.n)
            if len(colors) != 1 or colors[0] < 1:
                raise lines.fail(number, f"coloring line must be 'v: c' with c >= 1, got {line!r}")
            assignment[v] = colors[0]
        if len(assignment) != graph.n:
            raise GraphFileParseError(f"{file_path}: coloring covers {len(assignment)} of {graph.n} vertices")
        coloring = Coloring.from_dict(assignment)
    if lines.peek() is not None:
        number, line = lines.peek()
        raise lines.fail(number, f"unexpected line {line!r}")
    return coloring


def read_edge_list(path: Union[str, Path], graph: PlaneGraph) -> List[Edge]:
    """'u v' lines (comments allowed), as written for transversals and deletion sets."""
    file_path = Path(path)
    try:
        text = file_path.read_text()
    except (OSError, UnicodeDecodeError) as e:
        raise GraphFileReadError(f"{file_path}: {e}")
    lines = _Lines(text, str(file_path))
    edges: List[Edge] = []
    while lines.peek() is not None:
        number, line = lines.next("edge line")
        tokens = line.split()
        if len(tokens) != 2:
            raise lines.fail(number, f"edge line must be 'u v', got {line!r}")
        u, v = _ints(lines, number, tokens, "edge line")
        if not graph.has_edge(u, v):
            raise lines.fail(number, f"{u} {v} is not an edge of the graph")
        edges.append(edge_key(u, v))
    return sorted(set(edges))
