from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import digraphs

from acyclic_bounds.bounds import (
    agjs_bound,
    gruber_bound,
    monotone_f,
    neighborhood_bound,
    rho,
    rho_table,
)
from acyclic_bounds.digraph import Digraph, complete_symmetric, directed_cycle, directed_path
from acyclic_bounds.oracles import brute_alpha


def _rho_by_orders(D: Digraph, v: int) -> Fraction:
    """P(v precedes all out-neighbours or all in-neighbours), counted over orders of N[v]."""
    closed = [v, *D.nbrs(v)]
    outs, ins = set(D.out_nbrs(v)), set(D.in_nbrs(v))
    hits = total = 0
    for order in itertools.permutations(closed):
        pos = {x: i for i, x in enumerate(order)}
        total += 1
        if all(pos[w] > pos[v] for w in outs) or all(pos[w] > pos[v] for w in ins):
            hits += 1
    return Fraction(hits, total)


class TestRho:
    def test_isolated(self):
        assert rho(Digraph(1), 0) == 1.0

    def test_three_cycle(self):
        assert _rho_by_orders(directed_cycle(3), 0) == Fraction(2, 3)
        assert rho(directed_cycle(3), 0) == pytest.approx(2 / 3)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_complete_symmetric(self, n):
        D = complete_symmetric(n)
        assert _rho_by_orders(D, 0) == Fraction(1, n)
        assert rho(D, 0) == pytest.approx(1 / n)

    @settings(max_examples=60)
    @given(digraphs(max_n=7))
    def test_matches_order_count(self, D):
        for v in range(D.n):
            assert rho(D, v) == pytest.approx(float(_rho_by_orders(D, v)), abs=1e-12)


class TestAgjs:
    @pytest.mark.parametrize(
        "D, want",
        [
            (directed_cycle(3), 2.0),
            (Digraph(2, [(0, 1)]), 2.0),
            (Digraph(5), 5.0),
            (Digraph(0), 0.0),
            (directed_path(3), 8 / 3),
        ],
    )
    def test_values(self, D, want):
        assert agjs_bound(D) == pytest.approx(want)

    def test_cycle_is_tight(self):
        assert brute_alpha(directed_cycle(3))[0] == 2

    @settings(max_examples=80, deadline=None)
    @given(digraphs(max_n=9))
    def test_below_alpha(self, D):
        assert agjs_bound(D) <= brute_alpha(D)[0] + 1e-9

    @given(digraphs(max_n=9))
    def test_gruber_weaker(self, D):
        assert gruber_bound(D) <= agjs_bound(D) + 1e-12


class TestMonotoneF:
    def test_values(self):
        assert monotone_f(0, 0, 0) == 1.0
        assert monotone_f(1, 1, 0) == pytest.approx(2 / 3)

    @pytest.mark.parametrize("args", [(-1, 0, 0), (1, 1, 2), (0, 2, 1), (1, 1, -1)])
    def test_domain(self, args):
        with pytest.raises(ValueError):
            monotone_f(*args)

    @given(
        st.integers(0, 60), st.integers(0, 60), st.integers(0, 60),
        st.integers(0, 10), st.integers(0, 10), st.integers(0, 10),
    )
    def test_nonincreasing(self, x, y, z, dx, dy, dz):
        z = min(z, x, y)
        z2 = min(z + dz, x + dx, y + dy)
        assert monotone_f(x + dx, y + dy, z2) <= monotone_f(x, y, z) + 1e-15


class TestNeighborhood:
    def test_three_cycle(self):
        rep = neighborhood_bound(directed_cycle(3))
        assert rep.refined == pytest.approx(2.0)
        assert rep.delta == 0.0

    def test_edgeless(self):
        rep = neighborhood_bound(Digraph(3))
        assert rep.refined == 3.0
        assert rep.per_vertex_gain == (0.0, 0.0, 0.0)

    @pytest.mark.parametrize("k", [3, 10, 40])
    def test_out_star(self, k):
        D = Digraph(k + 1, [(0, i) for i in range(1, k + 1)])
        rep = neighborhood_bound(D)
        assert rep.refined == pytest.approx(k + 1)
        if k <= 14:
            assert brute_alpha(D)[0] == k + 1

    def test_pendant_gain(self):
        # a 2-cycle with a pendant: the pendant's slack is positive
        D = Digraph(3, [(0, 1), (1, 0), (1, 2)])
        r = rho_table(D)
        gain = [r[v] * max(0.0, 1 - r[v] - sum(r[u] for u in D.nbrs(v))) for v in range(3)]
        rep = neighborhood_bound(D)
        assert rep.per_vertex_gain == pytest.approx(tuple(gain))
        assert rep.refined <= brute_alpha(D)[0] + 1e-9

    def test_accepts_precomputed_rho(self):
        D = directed_path(5)
        assert neighborhood_bound(D, rho_table(D)) == neighborhood_bound(D)

    @settings(max_examples=100, deadline=None)
    @given(digraphs(max_n=10))
    def test_sandwich(self, D):
        rep = neighborhood_bound(D)
        alpha = brute_alpha(D)[0]
        assert rep.agjs <= rep.refined + 1e-12
        assert rep.refined <= alpha + 1e-9
        assert all(g >= 0 for g in rep.per_vertex_gain)


def test_rho_monotone_under_induced_subgraphs():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(2, 10))
        D = Digraph.from_adjacency((rng.random((n, n)) < rng.random()) & ~np.eye(n, dtype=bool))
        keep = sorted(set(rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False).tolist()))
        H, old = D.induced_subgraph(keep)
        for i, v in enumerate(old):
            assert rho(H, i) >= rho(D, v) - 1e-15
