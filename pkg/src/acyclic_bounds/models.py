"""Seeded random digraph models.

Every model draws one uniform number per ordered pair ``(u, v)``, ``u != v``,
in lexicographic order, and keeps the arc when the draw falls below that
pair's probability. A seed therefore fixes the graph completely, and the two
directions of a pair are always independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from acyclic_bounds.digraph import Digraph

# guards floor/ceil of n * fraction against products such as 0.7 * 100 = 70.00000000000001
_EPS = 1e-9


def _check_prob(name: str, p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")


@dataclass(frozen=True)
class ErParams:
    n: int
    p: float

    def __post_init__(self) -> None:
        _check_n(self.n)
        _check_prob("p", self.p)


@dataclass(frozen=True)
class TwoTypeParams:
    n: int
    p_low: float
    q1: float  # high-high
    q2: float  # high-low, either direction
    q3: float  # low-low

    def __post_init__(self) -> None:
        _check_n(self.n)
        for name in ("p_low", "q1", "q2", "q3"):
            _check_prob(name, getattr(self, name))

    @property
    def n_low(self) -> int:
        return math.floor(self.n * self.p_low + _EPS)


@dataclass(frozen=True)
class BipartiteParams:
    n: int
    a: float
    p: float

    def __post_init__(self) -> None:
        _check_n(self.n)
        _check_prob("a", self.a)
        _check_prob("p", self.p)

    @property
    def n1(self) -> int:
        return min(self.n, math.ceil(self.n * self.a - _EPS))

    @property
    def n2(self) -> int:
        return self.n - self.n1


def _sample(prob: np.ndarray, seed) -> Digraph:
    n = prob.shape[0]
    rng = np.random.default_rng(seed)
    off = ~np.eye(n, dtype=bool)
    draws = rng.random(n * (n - 1))
    adj = np.zeros((n, n), dtype=bool)
    adj[off] = draws < prob[off]  # boolean indexing walks off-diagonal pairs row-major
    return Digraph.from_adjacency(adj)


def gen_er(params: ErParams, seed=None) -> Digraph:
    return _sample(np.full((params.n, params.n), params.p), seed)


def gen_two_type(params: TwoTypeParams, seed=None) -> Digraph:
    """Vertices ``0..n_low-1`` are low-degree, the rest high-degree."""
    n, k = params.n, params.n_low
    low = np.arange(n) < k
    prob = np.full((n, n), params.q2)
    prob[np.ix_(~low, ~low)] = params.q1
    prob[np.ix_(low, low)] = params.q3
    return _sample(prob, seed)


def gen_bipartite(params: BipartiteParams, seed=None) -> Digraph:
    """Vertices ``0..n1-1`` form part A, the rest part B; arcs only cross the cut."""
    n, k = params.n, params.n1
    in_a = np.arange(n) < k
    prob = np.where(in_a[:, None] != in_a[None, :], params.p, 0.0)
    return _sample(prob, seed)


MODELS = {
    "er": (ErParams, gen_er),
    "two-type": (TwoTypeParams, gen_two_type),
    "bipartite": (BipartiteParams, gen_bipartite),
}


def generate(model: str, seed=None, **params) -> Digraph:
    try:
        param_cls, gen = MODELS[model]
    except KeyError:
        raise ValueError(f"unknown model {model!r}; choose from {sorted(MODELS)}") from None
    return gen(param_cls(**params), seed)
