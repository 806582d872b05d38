import pytest

from defcol.graph_file_parser import parse_graph_text

K5_TEXT = "5 10 triangulation\n" + "".join(f"{u} {v}\n" for u in range(5) for v in range(u + 1, 5))


def _data_lines(text):
    return [line for line in text.splitlines() if line and not line.startswith("#")]


def _generated(run_cli, *argv):
    code, text = run_cli(["gen", *argv])
    assert code == 0
    return text


def test_gen_writes_a_graph_file(run_cli):
    text = _generated(run_cli, "random-triangulation", "8", "--seed", "3")
    assert text.startswith("# family: random-triangulation n=8 seed=3\n")
    assert "seed=3" in text.splitlines()[1]
    graph = parse_graph_text(text).graph
    assert graph.n == 8 and graph.triangulation and graph.has_rotation


def test_gen_is_piped_into_the_oracle(run_cli):
    graph = _generated(run_cli, "double-wheel", "7")
    code, text = run_cli(["oracle", "mk", "--k", "4", "-"], stdin_text=graph)
    assert code == 0
    assert text == "2\n"


def test_m_value_of_the_eulerian_three_coloring(run_cli):
    graph = _generated(run_cli, "octahedron")
    code, text = run_cli(["m-value", "--coloring", "3col"], stdin_text=graph)
    assert code == 0
    assert text.splitlines()[0] == "3"
    code, _ = run_cli(["m-value", "--coloring", "apex:0"], stdin_text=graph)
    assert code == 0


def test_validate(run_cli, tmp_path):
    graph = _generated(run_cli, "icosahedron")
    code, text = run_cli(["validate"], stdin_text=graph)
    assert code == 0
    assert text.splitlines()[-1].startswith("#")
    (tmp_path / "k5.graph").write_text(K5_TEXT)
    code, _ = run_cli(["validate", "k5.graph"])
    assert code == 1


def test_faces(run_cli):
    code, text = run_cli(["faces"], stdin_text=_generated(run_cli, "octahedron"))
    assert code == 0
    assert len(_data_lines(text)) == 8
    assert text.splitlines()[-1] == "# 8 faces"


def test_decompose(run_cli):
    code, text = run_cli(["decompose"], stdin_text=_generated(run_cli, "stacked-chain", "3"))
    assert code == 0
    assert sum(line.startswith("piece ") for line in text.splitlines()) == 3
    assert sum(line.startswith("tree ") for line in text.splitlines()) == 2


def test_color(run_cli):
    k4_graph = _generated(run_cli, "k4")
    code, text = run_cli(["color", "--k", "4"], stdin_text=k4_graph)
    assert code == 0
    assert text.startswith("coloring 4\n")
    code, text = run_cli(["color", "--k", "3"], stdin_text=k4_graph)
    assert code == 1
    assert text.startswith("# none after")


def test_transversal_with_a_coloring_file(run_cli, tmp_path):
    (tmp_path / "dw7.graph").write_text(_generated(run_cli, "double-wheel", "7"))
    code, coloring = run_cli(["color", "--k", "4", "dw7.graph"])
    assert code == 0
    (tmp_path / "dw7.col").write_text(coloring)
    code, text = run_cli(["transversal", "dw7.graph", "--coloring", "dw7.col"])
    assert code == 0
    assert len(_data_lines(text)) == 2
    code, text = run_cli(["transversal", "dw7.graph", "--coloring", "dw7.col", "--method", "u-acyclic",
                          "--u", "0,1"])
    assert code == 0


def test_defect(run_cli):
    graph = _generated(run_cli, "octahedron")
    code, text = run_cli(["defect", "--k", "4"], stdin_text=graph)
    assert code == 0
    lines = text.splitlines()
    assert lines.index("coloring 4") == 1


@pytest.mark.parametrize("argv, stdin_text", [
    (["color"], None),
    (["gen", "double-wheel"], None),
    (["gen", "double-wheel", "6"], None),
    (["oracle", "mk"], "3 3\n0 1\n1 2\n0 2\n"),
    (["transversal", "--u", "0,1,2,3"], "3 3\n0 1\n1 2\n0 2\n"),
    (["transversal", "--u", "0,1", "--avoid", "avoid.txt"], "3 3\n0 1\n1 2\n0 2\n"),
    (["verify-paper", "--claim", "no_such_claim"], None),
])
def test_bad_arguments_exit_with_2(run_cli, argv, stdin_text):
    code, _ = run_cli(argv, stdin_text=stdin_text)
    assert code == 2


def test_bad_input_exits_with_2(run_cli):
    assert run_cli(["faces", "missing.graph"])[0] == 2
    assert run_cli(["faces"], stdin_text="3 1\n1 1\n")[0] == 2
    assert run_cli(["m-value"], stdin_text=_generated(run_cli, "octahedron"))[0] == 2
    assert run_cli(["m-value", "--coloring", "3col"], stdin_text=_generated(run_cli, "double-wheel", "7"))[0] == 2
    assert run_cli(["oracle", "mk", "--k", "4"], stdin_text=_generated(run_cli, "icosahedron"))[0] == 2
