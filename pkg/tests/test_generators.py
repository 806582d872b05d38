from collections import Counter

import pytest

from defcol.instances.generators import (
    FAMILIES,
    GeneratorParameterError,
    canonical_form,
    catalog_small,
    double_wheel,
    even_double_wheel,
    generate,
    glue_along_face,
    octahedron_replacement,
    random_triangulation,
    replacement_lower_bound,
    stacked_chain,
)
from defcol.plane_graph import faces, is_triangulation


def test_catalog_is_isomorph_free():
    catalog = catalog_small(6)
    assert Counter(G.n for G in catalog) == {3: 1, 4: 1, 5: 1, 6: 2}
    assert all(is_triangulation(G) for G in catalog)
    assert len({canonical_form(G) for G in catalog}) == len(catalog)


def test_catalog_size_guard():
    with pytest.raises(GeneratorParameterError):
        catalog_small(8)


def test_canonical_form_ignores_labels(dw7):
    shuffled = dw7.relabeled({v: (3 * v + 1) % 7 for v in dw7.vertices})
    assert canonical_form(shuffled) == canonical_form(dw7)
    assert canonical_form(dw7) != canonical_form(random_triangulation(7, seed=1))


@pytest.mark.parametrize("builder, n", [(double_wheel, 8), (double_wheel, 5), (even_double_wheel, 7)])
def test_double_wheel_parity(builder, n):
    with pytest.raises(GeneratorParameterError):
        builder(n)


def test_double_wheel_degrees(dw7, edw8):
    assert sorted(dw7.degree(v) for v in dw7.vertices) == [4] * 5 + [5, 5]
    assert all(edw8.degree(v) % 2 == 0 for v in edw8.vertices)


def test_stacked_chain_sizes():
    assert stacked_chain(1).n == 4
    assert stacked_chain(2).n == 5
    assert is_triangulation(stacked_chain(5))


def test_random_triangulation_is_reproducible():
    first = random_triangulation(12, seed=3)
    assert first.edges == random_triangulation(12, seed=3).edges
    assert is_triangulation(first)
    assert first.m == 3 * 12 - 6


def test_octahedron_replacement(octa):
    result = octahedron_replacement(octa)
    assert result.graph.n == 18
    assert len(result.octahedra) == 4
    assert is_triangulation(result.graph)
    assert replacement_lower_bound(result) == 4


def test_replacement_of_larger_eulerian_triangulation(edw8):
    result = octahedron_replacement(edw8)
    assert result.graph.n == 4 * 8 - 6 == 26
    assert len(result.parts()) == 6
    assert is_triangulation(result.graph)


def test_replacement_needs_eulerian_host(dw7):
    with pytest.raises(GeneratorParameterError):
        octahedron_replacement(dw7)


def test_glue_along_face(octa, edw8):
    G = glue_along_face(octa, faces(octa)[0], edw8, faces(edw8)[0])
    assert G.n == 11
    assert is_triangulation(G)
    with pytest.raises(GeneratorParameterError):
        glue_along_face(octa, (0, 1, 2), edw8, faces(edw8)[0])


def test_generate_records_provenance():
    descriptor = generate("random-triangulation", {"n": 8}, seed=3)
    assert descriptor.parameters == {"n": 8, "seed": 3}
    assert "seed=3" in descriptor.provenance
    assert descriptor.regenerate().graph.edges == descriptor.graph.edges


def test_generate_rejects_bad_requests():
    with pytest.raises(GeneratorParameterError):
        generate("dodecahedron")
    with pytest.raises(GeneratorParameterError):
        generate("double-wheel", {})
    with pytest.raises(GeneratorParameterError):
        generate("double-wheel", {"n": 6})


def test_every_family_generates_a_triangulation():
    defaults = {"n": 8, "t": 3, "n1": 6, "n2": 8}
    for name, family in FAMILIES.items():
        params = {p: defaults[p] for p in family.parameters}
        if name == "double-wheel":
            params["n"] = 9
        G = generate(name, params).graph
        assert G.has_rotation, name
        assert is_triangulation(G), name
