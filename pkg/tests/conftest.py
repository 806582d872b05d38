import io
from typing import List, Optional, Tuple

import pytest

from defcol.coloring import Coloring, eulerian_three_coloring
from defcol.coloring_search import search_coloring
from defcol.config import load_config
from defcol.instances.generators import double_wheel, even_double_wheel, k4, octahedron
from defcol.main import main
from defcol.plane_graph import PlaneGraph


@pytest.fixture
def octa() -> PlaneGraph:
    return octahedron()


@pytest.fixture
def octa_phi3(octa) -> Coloring:
    return eulerian_three_coloring(octa)


@pytest.fixture
def dw7() -> PlaneGraph:
    return double_wheel(7)


@pytest.fixture
def dw7_phi4(dw7) -> Coloring:
    return search_coloring(dw7, 4).coloring


@pytest.fixture
def edw8() -> PlaneGraph:
    return even_double_wheel(8)


@pytest.fixture
def k4_rainbow() -> Tuple[PlaneGraph, Coloring]:
    return k4(), Coloring.from_dict({0: 1, 1: 2, 2: 3, 3: 4})


@pytest.fixture
def config():
    return load_config()


@pytest.fixture
def run_cli(monkeypatch, tmp_path):
    """Run the command line in tmp_path; returns (exit code, stdout text)."""
    monkeypatch.chdir(tmp_path)

    def run(argv: List[str], stdin_text: Optional[str] = None) -> Tuple[int, str]:
        stdout = io.StringIO()
        stdin = io.StringIO(stdin_text) if stdin_text is not None else None
        code = main(argv, stdin=stdin, stdout=stdout)
        return code, stdout.getvalue()

    return run
