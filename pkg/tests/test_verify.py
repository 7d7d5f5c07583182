from __future__ import annotations

from acyclic_bounds.digraph import Digraph, every_component_complete_symmetric, parse_edge_list
from acyclic_bounds.verify import degenerate_constructions, instance_set, run_verification


def test_exhaustive_three():
    report = run_verification(max_n=3, samples=0)
    assert report.passed
    # 1 + 4 + 64 digraphs of orders 1..3
    assert report.checks["variance"].graphs == 69


def test_default_run_passes():
    report = run_verification()
    assert report.passed, report.render()


def test_fault_is_caught_with_counterexample():
    report = run_verification(max_n=3, samples=0, inject_fault=True)
    assert not report.passed
    bad = report.checks["catalog"]
    assert bad.failures > 0
    D = parse_edge_list(bad.first_failure)
    assert D.m > 0
    assert "FAIL" in report.render()


def test_instances_include_two_cycles():
    graphs = list(instance_set(7, 40, seed=1))
    assert any(D.has_arc(u, v) and D.has_arc(v, u) for D in graphs[-40:] for u, v in D.arcs)
    assert all(5 <= D.n <= 7 for D in graphs[-40:])


def test_degenerate_constructions_cover_both_sides():
    graphs = list(degenerate_constructions(6))
    flags = {every_component_complete_symmetric(D) for D in graphs}
    assert flags == {True, False}
    assert Digraph(1) in graphs
