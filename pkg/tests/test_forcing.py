from fractions import Fraction

import pytest

from chainforge import forcing
from chainforge.forcing import (
    CliqueBoundMismatch,
    Condition,
    Dq,
    WitnessSearchExhausted,
    canonical_witness,
    empty_condition,
    extend_Dq,
    extend_DHKm,
    generic_run,
    is_condition,
    leq,
    log_jsonl,
    replay,
    union_graph,
)
from chainforge.graphs import Graph
from chainforge.qline import Window, jclass

F = Fraction


def test_is_condition_clean():
    g = Graph.build([0, F(1, 2), 5], [[0, F(1, 2)]])
    ok, violations = is_condition(g, 3)
    assert ok and violations == []


def test_is_condition_detects_clique():
    g = Graph.build([0, 2, 4], [[0, 2], [2, 4], [0, 4]])
    ok, violations = is_condition(g, 3)
    assert not ok
    assert any(v["clause"] == "K3" for v in violations)
    # the same graph is fine at clique bound 4
    ok4, _ = is_condition(g, 4)
    assert ok4


def test_is_condition_detects_unit_edge():
    g = Graph.build([0, 1], [[0, 1]])
    ok, violations = is_condition(g, 3)
    assert not ok
    assert any(v["clause"] == "P2" for v in violations)


def test_is_condition_detects_shift_pattern():
    # edges {a, b} and {a+1, b} with b < a+1
    a, b = F(2), F(1, 2)
    g = Graph.build([a, a + 1, b], [[a, b], [a + 1, b]])
    ok, violations = is_condition(g, 3)
    assert not ok
    assert any(v["clause"] == "P1" for v in violations)


def test_shift_pattern_above_is_fine():
    a, b = F(0), F(5, 2)
    g = Graph.build([a, a + 1, b], [[a, b], [a + 1, b]])
    ok, violations = is_condition(g, 3)
    assert ok, violations


def test_leq():
    q = Condition(Graph.build([0, 2], [[0, 2]]), 3)
    p = Condition(Graph.build([0, 2, 5], [[0, 2], [2, 5]]), 3)
    assert leq(p, q)
    assert not leq(q, p)
    # touching the induced part breaks the order
    r = Condition(Graph.build([0, 2, 5], [[2, 5]]), 3)
    assert not leq(r, q)


def test_leq_clique_bound_mismatch():
    with pytest.raises(CliqueBoundMismatch):
        leq(empty_condition(3), empty_condition(4))


def test_extend_Dq_idempotent():
    p = empty_condition(3)
    p1 = extend_Dq(p, F(1, 2))
    assert F(1, 2) in p1.vertices
    assert extend_Dq(p1, F(1, 2)) is p1


def test_canonical_witness_properties():
    q = canonical_witness(F(0), F(1), frozenset())
    assert q == F(1, 2)
    q = canonical_witness(F(0), F(1), frozenset({F(1, 2)}))
    assert F(0) < q < F(1) and jclass(q) == 0


def test_canonical_witness_exhaustion():
    with pytest.raises(WitnessSearchExhausted):
        canonical_witness(F(0), F(1, 1000), frozenset(), ceiling=10)


def test_extend_DHKm_attaches_witness():
    p = empty_condition(3)
    H = [F(0), F(3)]
    K = [F(3)]
    p1, rec = extend_DHKm(p, H, K, m=2)
    assert rec.applicable
    w = rec.witness
    assert w is not None
    assert F(3) < w < F(3) + F(1, 2)
    assert jclass(w) == 0
    # joined to exactly K
    assert p1.graph.has_edge(w, F(3))
    assert not p1.graph.has_edge(w, F(0))
    # witness avoids the integer-shift neighborhood of existing vertices
    for a in (F(0), F(3)):
        assert w not in (a - 1, a, a + 1)
    assert leq(p1, p)


def test_extend_DHKm_inapplicable_pair():
    # K contains an edge, so it is not K_2-free at clique bound 3
    p = Condition(Graph.build([0, F(5, 2)], [[0, F(5, 2)]]), 3)
    p1, rec = extend_DHKm(p, [F(0), F(5, 2)], [F(0), F(5, 2)], m=1)
    assert not rec.applicable
    assert rec.witness is None
    assert p1.vertices == p.vertices


def test_extend_DHKm_validates_inputs():
    with pytest.raises(ValueError):
        extend_DHKm(empty_condition(3), [F(0)], [F(1)], m=1)
    with pytest.raises(ValueError):
        extend_DHKm(empty_condition(3), [F(0)], [F(0)], m=0)


def test_generic_run_small_invariants():
    run = generic_run(3, 60, Window(F(-3), F(3), 8))
    assert len(run.conditions) == len(run.log) == len(run.schedule)
    # decreasing chain of conditions
    for a, b in zip(run.conditions[1:], run.conditions):
        assert leq(a, b)
    g = union_graph(run)
    ok, violations = is_condition(g, 3)
    assert ok, violations
    # Dq steps actually inject scheduled rationals
    for d in run.schedule:
        if isinstance(d, Dq):
            assert d.q in g.vertices
    assert run.coverage["dq_denominator_covered"] >= 1
    assert run.coverage["dhkm_entries_met"] > 0


def test_generic_run_deterministic_and_replayable():
    a = generic_run(3, 50, Window(F(-2), F(2), 6))
    b = generic_run(3, 50, Window(F(-2), F(2), 6))
    assert log_jsonl(a) == log_jsonl(b)
    assert a.final.graph == b.final.graph
    replayed = replay(3, a.log)
    assert replayed.graph == a.final.graph


def test_generic_run_rejects_bad_config():
    with pytest.raises(ValueError):
        generic_run(2, 10, Window(F(0), F(1), 4))
    with pytest.raises(ValueError):
        generic_run(3, 0, Window(F(0), F(1), 4))
    with pytest.raises(ValueError):
        generic_run(3, 10, Window(None, F(1), 4))


def test_denom_ceiling_env(monkeypatch):
    monkeypatch.delenv(forcing.ENV_DENOM_CEILING, raising=False)
    assert forcing.denom_ceiling() == forcing.DEFAULT_DENOM_CEILING
    monkeypatch.setenv(forcing.ENV_DENOM_CEILING, "123")
    assert forcing.denom_ceiling() == 123
