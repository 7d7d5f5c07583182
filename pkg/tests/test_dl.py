from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from strategies import digraphs

from acyclic_bounds.digraph import Digraph, complete_symmetric, directed_cycle, directed_path
from acyclic_bounds.dl import (
    Labeling,
    is_fvs,
    optimal_labeling,
    random_labeling,
    run_dl,
    sample_acyclic_set,
    worst_case_size,
)
from acyclic_bounds.oracles import brute_beta


def _labelings(n: int):
    for perm in itertools.permutations(range(1, n + 1)):
        yield Labeling(perm)


class TestLabeling:
    @pytest.mark.parametrize("rank", [(1, 1), (0, 1), (1, 3), (2,)])
    def test_rejects_non_bijection(self, rank):
        with pytest.raises(ValueError):
            Labeling(rank)

    def test_from_order(self):
        L = Labeling.from_order([2, 0, 1])
        assert L.rank == (2, 3, 1)
        assert L.order() == [2, 0, 1]

    def test_reverse(self):
        assert Labeling((1, 3, 2)).reversed() == Labeling((3, 1, 2))

    def test_random_single(self):
        assert random_labeling(1, 0).rank == (1,)

    def test_random_reproducible(self):
        assert random_labeling(20, 42) == random_labeling(20, 42)
        assert random_labeling(20, np.random.default_rng(3)) == random_labeling(20, 3)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            run_dl(directed_cycle(3), Labeling.identity(2))


class TestRunDl:
    def test_three_cycle_takes_min_rank(self, backend):
        D = directed_cycle(3)
        for L in _labelings(3):
            S = run_dl(D, L).S
            assert S == {L.order()[0]}

    def test_single_arc_is_empty(self, backend):
        D = Digraph(2, [(0, 1)])
        for L in _labelings(2):
            assert run_dl(D, L).size == 0

    def test_two_cycle_takes_smaller_rank(self, backend):
        D = complete_symmetric(2)
        assert run_dl(D, Labeling((1, 2))).S == {0}
        assert run_dl(D, Labeling((2, 1))).S == {1}

    @settings(max_examples=150, deadline=None)
    @given(digraphs(max_n=9))
    def test_fvs_and_cap(self, D):
        rng = np.random.default_rng(D.m)
        for _ in range(10):
            S = run_dl(D, random_labeling(D.n, rng)).S
            assert is_fvs(D, S)
            assert len(S) <= worst_case_size(D)


class TestSampleAcyclicSet:
    def test_three_cycle_identity(self):
        I = sample_acyclic_set(directed_cycle(3), Labeling.identity(3))
        assert I == {0, 1}
        assert directed_cycle(3).is_acyclic_induced(I)

    def test_edgeless(self):
        assert sample_acyclic_set(Digraph(4), Labeling((3, 1, 4, 2))) == {0, 1, 2, 3}

    @settings(max_examples=40, deadline=None)
    @given(digraphs(max_n=5))
    def test_duality(self, D):
        everything = frozenset(range(D.n))
        for L in _labelings(D.n):
            I = sample_acyclic_set(D, L)
            assert I == everything - run_dl(D, L.reversed()).S
            assert D.is_acyclic_induced(I)


class TestIsFvs:
    def test_examples(self):
        C = directed_cycle(3)
        assert is_fvs(C, {0})
        assert not is_fvs(C, set())
        assert is_fvs(complete_symmetric(2), {0})


class TestOptimalLabeling:
    def test_three_cycle(self, backend):
        L = optimal_labeling(directed_cycle(3), {0})
        assert L.rank == (1, 2, 3)
        assert run_dl(directed_cycle(3), L).S == {0}

    def test_dag(self):
        D = Digraph(4, [(3, 1), (1, 0), (2, 0)])
        L = optimal_labeling(D, set())
        assert L.order() == D.topological_order()
        assert run_dl(D, L).size == 0

    def test_two_cycle(self):
        assert run_dl(complete_symmetric(2), optimal_labeling(complete_symmetric(2), {1})).S == {1}

    def test_rejects_non_fvs(self):
        with pytest.raises(ValueError, match="not a feedback"):
            optimal_labeling(directed_cycle(3), set())

    def test_rejects_non_minimal(self):
        with pytest.raises(ValueError, match="not inclusion-minimal"):
            optimal_labeling(directed_cycle(3), {0, 1})

    def test_rejects_bad_vertex(self):
        with pytest.raises(ValueError):
            optimal_labeling(directed_path(2), {5})

    @settings(max_examples=80, deadline=None)
    @given(digraphs(max_n=9))
    def test_reproduces_minimum_fvs(self, D):
        beta, s_star = brute_beta(D)
        S = run_dl(D, optimal_labeling(D, s_star)).S
        assert S == s_star and len(S) == beta


def test_worst_case():
    assert worst_case_size(complete_symmetric(4)) == 3
    assert worst_case_size(Digraph(3)) == 0
