"""The thirteen acceptance criteria.

Each test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion.  Run with ``pytest tests/test_acceptance.py``.
"""

from __future__ import annotations

import time

import pytest

from braidthompson import matching
from braidthompson.coset import AF, BF, generation_check, nerve_braige_isomorphism
from braidthompson.homology import CERTIFIED, REFUTED, connectivity_verdict, reduced_homology
from braidthompson.suites import run_suite


def assert_suite(name: str, **kw):
    r = run_suite(name, seed=0, **kw)
    print(f"{name}: {r.cases} cases, {len(r.failures)} failures, {r.wall_time:.1f}s")
    assert r.passed, r.failures[:5] or r.inconclusive[:5]
    assert r.cases > 0
    return r


@pytest.mark.criterion(1, "M(K_n) is (nu(n)-1)-connected for n = 2..11; M(K_4) refuted at k = 0")
def test_matching_connectivity():
    start = time.perf_counter()
    for n in range(2, 12):
        k = matching.nu(n) - 1
        X = matching.matching_complex(matching.complete_graph(n), max_dim=max(k + 1, 0))
        assert connectivity_verdict(X, k)[0] == CERTIFIED, n
    verdict, rep = connectivity_verdict(matching.matching_complex(matching.complete_graph(4)), 0)
    assert verdict == REFUTED and rep.group(0) == (2, [])
    assert time.perf_counter() - start < 120


@pytest.mark.criterion(2, "reduced H_1(M(K_7)) = Z/3")
def test_torsion():
    rep = reduced_homology(matching.matching_complex(matching.complete_graph(7), max_dim=2), 1)
    assert rep.group(1) == (0, [3])


@pytest.mark.criterion(3, "M(L) with m edges is (nu(m)-1)-connected for m = 1..11")
def test_linear_graphs():
    start = time.perf_counter()
    for m in range(1, 12):
        k = matching.nu(m) - 1
        X = matching.matching_complex(matching.linear_graph_by_edges(m), max_dim=max(k + 1, 0))
        assert connectivity_verdict(X, k)[0] == CERTIFIED, m
    assert time.perf_counter() - start < 60


@pytest.mark.criterion(4, "floor lemma, exhaustive over l <= 4 and m_i in [-10, 10]")
def test_floor_lemma():
    start = time.perf_counter()
    assert matching.floor_lemma_exhaustive(4, -10, 10) == []
    assert time.perf_counter() - start < 10


@pytest.mark.criterion(5, "Morse decomposition: all of K_5, 200 samples each from K_6 and K_7")
def test_morse_decomposition():
    assert_suite("morse-decomp")


@pytest.mark.criterion(6, "reduced spraige representatives are unique (1000 diagrams)")
def test_confluence():
    r = assert_suite("confluence")
    assert r.cases >= 1000 and r.wall_time < 60


@pytest.mark.criterion(7, "groupoid laws, left cancellation, lub and Boolean intervals")
@pytest.mark.parametrize("suite", ["spraige-axioms", "order-lattice"])
def test_groupoid_and_order(suite):
    assert_suite(suite)


@pytest.mark.slow
@pytest.mark.criterion(8, "stabilizer criterion, exhaustive for n <= 5 and length <= 6")
def test_stabilizers():
    assert_suite("stabilizers")


@pytest.mark.criterion(9, "cloning maps: pure homomorphism, B_3 witness, stabilizer equality")
def test_cloning():
    assert_suite("cloning")


@pytest.mark.criterion(10, "pi constant on classes, dimensions kept, fiber joins for n <= 5, L <= 2")
def test_pi_and_fibers():
    assert_suite("pi-fibers")


@pytest.mark.criterion(11, "arc action: relations, inverses, 500 cross-validated pairs")
def test_arc_action():
    r = assert_suite("arc-action")
    assert r.cases >= 500


@pytest.mark.criterion(12, "truncated coset complex of BF_n matches PB_n(L_n) for n <= 4, L <= 2")
@pytest.mark.parametrize("n", [2, 3, 4])
def test_coset_realization(n):
    for L in range(3):
        rep = nerve_braige_isomorphism(n, L)
        assert rep.vertex_bijection and rep.simplex_bijection, rep.to_json()
        assert rep.fundamental_domain


@pytest.mark.criterion(13, "generators covered by BF_6 and AF_6, not by BF_5")
def test_generation():
    start = time.perf_counter()
    assert generation_check(6, BF).all_covered
    assert generation_check(6, AF).all_covered
    assert not generation_check(5, BF).all_covered
    assert time.perf_counter() - start < 30
