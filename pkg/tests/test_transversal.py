import math
import random
from dataclasses import replace

import pytest

from defcol.coloring import ColoringError, ImproperColoringError, bichromatic_edges, random_proper_coloring
from defcol.instances.generators import even_double_wheel, stacked_chain
from defcol.plane_graph import GraphError
from defcol.transversal import (
    AvoidanceCycleError,
    EqualityClass,
    NotACliqueError,
    apex_bound,
    bound_for,
    characterize_equality,
    compose_over_decomposition,
    m_k,
    m_value,
    min_transversal,
    normalize_u,
    verify_certificate,
)


def test_m_value_of_three_colored_octahedron(octa, octa_phi3):
    assert m_value(octa, octa_phi3) == octa.n - 3 == 3


def test_m_value_of_rainbow_k4(k4_rainbow):
    G, phi = k4_rainbow
    assert m_value(G, phi) == 0


def test_double_wheel_meets_the_four_connected_bound(dw7, dw7_phi4):
    assert m_value(dw7, dw7_phi4) == 2
    bound = bound_for(dw7, dw7_phi4)
    assert bound.label == "n-5"
    assert bound.value == 2


def test_bound_for_three_colors(octa, octa_phi3):
    assert bound_for(octa, octa_phi3).label == "n-3"


def test_m_value_rejects_improper_coloring(octa, octa_phi3):
    with pytest.raises(ImproperColoringError):
        m_value(octa, octa_phi3.recolor(0, octa_phi3[1]))


def test_min_transversal_is_certified(dw7, dw7_phi4):
    cert = min_transversal(dw7, dw7_phi4)
    assert cert.size == 2
    assert cert.optimal
    assert cert.kills_all and cert.forest
    report = verify_certificate(dw7, dw7_phi4, cert)
    assert report.ok, report.summary()


def test_min_transversal_avoids_edges(octa, octa_phi3):
    first = min_transversal(octa, octa_phi3)
    avoided = first.edges[0]
    second = min_transversal(octa, octa_phi3, avoid=[avoided])
    assert avoided not in second.edges
    assert second.size == first.size == 3
    assert verify_certificate(octa, octa_phi3, second).ok


def test_avoiding_a_whole_bichromatic_cycle_fails(octa, octa_phi3):
    cycle = bichromatic_edges(octa, octa_phi3)[(1, 2)]
    with pytest.raises(AvoidanceCycleError):
        min_transversal(octa, octa_phi3, avoid=cycle)


def test_avoiding_a_non_edge_fails(octa, octa_phi3):
    with pytest.raises(GraphError):
        min_transversal(octa, octa_phi3, avoid=[(0, 2)])


def test_verification_catches_a_tampered_certificate(octa, octa_phi3):
    cert = min_transversal(octa, octa_phi3)
    tampered = replace(cert, edges=cert.edges[1:])
    report = verify_certificate(octa, octa_phi3, tampered)
    assert not report.ok
    assert not report.passed("kills_all")
    assert not report.passed("flags")
    assert not report.passed("optimal")


def test_composition_over_separating_triangles():
    G = stacked_chain(4)
    rng = random.Random(5)
    for _ in range(10):
        phi = random_proper_coloring(G, 5, rng)
        composition = compose_over_decomposition(G, phi)
        assert len(composition.breakdown) == 4
        assert composition.total == m_value(G, phi)


def test_equality_characterization(octa, octa_phi3, k4_rainbow, dw7, dw7_phi4):
    assert characterize_equality(octa, octa_phi3) == EqualityClass.EQUALS_N_MINUS_3
    G, phi = k4_rainbow
    assert characterize_equality(G, phi) == EqualityClass.EQUALS_N_MINUS_4
    assert characterize_equality(dw7, dw7_phi4) == EqualityClass.BELOW


def test_m_k_extremal_values(dw7, edw8, k4_rainbow):
    assert m_k(dw7, 4) == 2
    assert m_k(edw8, 3) == 5
    G, _ = k4_rainbow
    assert m_k(G, 3) == math.inf


def test_apex_bound_on_even_double_wheel():
    result = apex_bound(even_double_wheel(10))
    assert result.three_coloring_value == 7
    assert result.max_apex_value <= 10 - 5


def test_apex_bound_needs_even_degrees(dw7):
    with pytest.raises(ColoringError):
        apex_bound(dw7)


def test_normalize_u(octa):
    assert normalize_u(octa, [4, 0, 1]) == (0, 1, 4)
    with pytest.raises(NotACliqueError):
        normalize_u(octa, [0, 2])
    with pytest.raises(NotACliqueError):
        normalize_u(octa, [0, 1, 4, 5])
    with pytest.raises(NotACliqueError):
        normalize_u(octa, [0, 9])
