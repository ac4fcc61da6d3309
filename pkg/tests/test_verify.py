"""Verification suites: enumeration, small-budget runs, mutation checks."""

import json
from fractions import Fraction

import pytest

from dualgraph.canonical import KType
from dualgraph.errors import DomainError
from dualgraph.graphs import DualGraph, blow_down
from dualgraph.twigs import adjoint
from dualgraph.verify import (
    SUITES,
    Budget,
    enumerate_admissible_twigs,
    thread_cap,
    verify_all,
    verify_contraction_suite,
    verify_fujita_suite,
    verify_suite,
    verify_threshold_suite,
    verify_trichotomy_suite,
)

SMALL = Budget(
    max_det=6, max_len=4, max_n=3, max_m=2, max_b_len=2, max_b_weight=5
)
TINY = Budget(
    max_det=4, max_len=3, max_n=2, max_m=2, max_b_len=2, max_b_weight=4
)


# -- twig enumeration ----------------------------------------------------------


def test_enumeration_smallest_boxes():
    assert list(enumerate_admissible_twigs(1, 3)) == [(2,), (3,)]
    assert list(enumerate_admissible_twigs(2, 2)) == [(2,), (2, 2)]


def test_enumeration_is_preorder_lexicographic():
    got = list(enumerate_admissible_twigs(3, 3))
    assert len(got) == 14  # 2 + 4 + 8
    assert got[:7] == [
        (2,),
        (2, 2),
        (2, 2, 2),
        (2, 2, 3),
        (2, 3),
        (2, 3, 2),
        (2, 3, 3),
    ]
    assert got[7] == (3,)
    assert len(set(got)) == len(got)


def test_enumeration_respects_caps():
    for t in enumerate_admissible_twigs(4, 5):
        assert 1 <= len(t) <= 4
        assert all(2 <= a <= 5 for a in t)


# -- small-budget runs ----------------------------------------------------------


def test_all_suites_pass_at_small_budget():
    rep = verify_all(SMALL)
    assert rep["pass"] is True
    assert set(rep["suites"]) == set(SUITES)
    assert rep["budget"] == SMALL.to_json_dict()
    for name in SUITES:
        sub = rep["suites"][name]
        assert sub["suite"] == name
        assert sub["instances"] > 0
        assert sub["checks"] >= sub["instances"]
        assert sub["failures"] == []
        assert sub["pass"] is True


def test_unknown_suite_is_rejected():
    with pytest.raises(DomainError):
        verify_suite("determinants", SMALL)


def test_reports_are_deterministic():
    first = verify_suite("fujita", TINY)
    second = verify_suite("fujita", TINY)
    assert first == second
    a = json.dumps(verify_threshold_suite(TINY), sort_keys=True)
    b = json.dumps(verify_threshold_suite(TINY), sort_keys=True)
    assert a == b


# -- mutation checks: a corrupted ingredient must be reported --------------------


def test_fujita_suite_catches_wrong_adjoint():
    rep = verify_fujita_suite(3, 4, adjoint_fn=lambda t: adjoint(t[::-1]))
    assert rep["pass"] is False
    assert rep["failures"]
    entry = rep["failures"][0]
    assert set(entry) == {"check", "instance", "detail"}


def test_threshold_suite_catches_wrong_negdef():
    rep = verify_threshold_suite(TINY, negdef_fn=lambda g: True)
    assert rep["pass"] is False
    # the failing instances are the over-bound ones, and each is replayable
    spec = json.loads(rep["failures"][0]["instance"])
    assert spec["family"] in (3, 4, 5)
    assert "l" in spec


def test_trichotomy_suite_catches_wrong_classification():
    rep = verify_trichotomy_suite(
        TINY, report_fn=lambda g: (KType.CANONICAL_AMPLE, Fraction(2))
    )
    assert rep["pass"] is False
    assert any(f["check"] == "predicted-matches-computed" for f in rep["failures"])


def test_contraction_suite_catches_wrong_neighbor_weight():
    def bad_blow(g, v):
        nbrs = sorted(g.adjacency[v], key=g.weight)
        h = blow_down(g, v)
        ws = dict(h.weights)
        ws[nbrs[0]] += 2
        return DualGraph(ws, h.edges, c=h.c)

    rep = verify_contraction_suite(SMALL, blow_fn=bad_blow)
    assert rep["pass"] is False
    assert rep["failures"]


# -- thread cap ------------------------------------------------------------------


def test_thread_cap_reads_environment(monkeypatch):
    monkeypatch.delenv("DUALGRAPH_THREADS", raising=False)
    assert thread_cap() == 0
    monkeypatch.setenv("DUALGRAPH_THREADS", "4")
    assert thread_cap() == 4
    monkeypatch.setenv("DUALGRAPH_THREADS", " 2 ")
    assert thread_cap() == 2


@pytest.mark.parametrize("junk", ["x", "-3", "1.5", ""])
def test_thread_cap_rejects_junk(junk, monkeypatch):
    monkeypatch.setenv("DUALGRAPH_THREADS", junk)
    with pytest.raises(DomainError):
        thread_cap()


def test_suite_runner_validates_thread_cap(monkeypatch):
    monkeypatch.setenv("DUALGRAPH_THREADS", "no")
    with pytest.raises(DomainError):
        verify_suite("fujita", TINY)
