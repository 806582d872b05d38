import math

import pytest

from defcol.coloring_search import SearchStatus, iter_colorings, search_coloring
from defcol.config import load_config
from defcol.instances.generators import double_wheel, icosahedron, k4, stacked_chain
from defcol.instances.oracles import (
    INFINITY,
    OracleLimits,
    SizeGuardError,
    brute_m,
    brute_m_dprime,
    brute_m_k,
    brute_m_prime,
    brute_optimal_u_acyclic,
)
from defcol.plane_graph import faces, subdivide
from defcol.transversal import m_value, verify_certificate


@pytest.fixture(autouse=True)
def default_limits(monkeypatch):
    monkeypatch.delenv("ORACLE_MAX_N", raising=False)
    monkeypatch.delenv("ORACLE_MAX_EDGES", raising=False)


def test_brute_m_agrees_with_the_formula(octa, octa_phi3):
    assert brute_m(octa, octa_phi3) == m_value(octa, octa_phi3) == 3
    G = stacked_chain(2)
    for phi in iter_colorings(G, 5):
        assert brute_m(G, phi) == m_value(G, phi)


def test_brute_m_k(dw7, edw8):
    assert brute_m_k(dw7, 4) == 2
    assert brute_m_k(double_wheel(9), 4) == 4
    assert brute_m_k(edw8, 3) == 5
    assert brute_m_k(k4(), 3) == INFINITY


def test_octahedron_sandwich(octa):
    m4 = brute_m_k(octa, 4)
    assert m4 == brute_m_prime(octa, 4) == brute_m_dprime(octa, 4) == 1


def test_k4_without_three_colorings():
    G = k4()
    assert math.isinf(brute_m_k(G, 3))
    assert brute_m_dprime(G, 3) == 2
    assert brute_m_prime(G, 3) == 1
    assert search_coloring(subdivide(G, [(0, 1), (0, 2)]), 3, require_acyclic=True).status == SearchStatus.FOUND
    assert search_coloring(subdivide(G, [(0, 1)]), 3, require_acyclic=True).status == SearchStatus.NONE


def test_size_guards(monkeypatch):
    with pytest.raises(SizeGuardError):
        brute_m_k(icosahedron(), 4)
    with pytest.raises(SizeGuardError):
        brute_m_prime(double_wheel(9), 4)
    with pytest.raises(SizeGuardError):
        brute_m_k(k4(), 4, limits=OracleLimits(max_n=3))


def test_limits_from_environment(monkeypatch):
    assert OracleLimits.from_environment() == OracleLimits(max_n=9, max_edges=18)
    monkeypatch.setenv("ORACLE_MAX_N", "12")
    monkeypatch.setenv("ORACLE_MAX_EDGES", "30")
    assert OracleLimits.from_environment() == OracleLimits(max_n=12, max_edges=30)


def test_config_takes_oracle_limits_from_environment(monkeypatch):
    assert load_config().oracle_config.limits == OracleLimits(max_n=9, max_edges=18)
    monkeypatch.setenv("ORACLE_MAX_N", "5")
    assert load_config().oracle_config.limits == OracleLimits(max_n=5, max_edges=18)


def test_brute_optimal_u_acyclic(octa, octa_phi3):
    u = faces(octa)[0]
    cert = brute_optimal_u_acyclic(octa, octa_phi3, u)
    assert cert is not None
    assert cert.size == 3
    assert cert.method == "exhaustive"
    assert verify_certificate(octa, octa_phi3, cert).ok
