"""The directed-labelling (DL) randomized feedback vertex set procedure.

Given a bijective labelling of the vertices, DL puts ``u`` in ``S`` exactly
when ``u`` has an in-neighbour and an out-neighbour with a larger label. The
minimum-labelled vertex of every directed cycle qualifies, so ``D - S`` is
always acyclic, and the largest-labelled vertex of every weak component never
qualifies, so ``|S| <= n - c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from acyclic_bounds import kernels
from acyclic_bounds.digraph import Digraph


@dataclass(frozen=True)
class Labeling:
    """Bijection from vertices to ranks ``1..n``; ``rank[v]`` is the label of ``v``."""

    rank: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.rank)
        if sorted(self.rank) != list(range(1, n + 1)):
            raise ValueError(f"labeling is not a bijection onto 1..{n}: {self.rank}")

    @classmethod
    def from_order(cls, order: Sequence[int]) -> Labeling:
        """Labelling that ranks ``order[0]`` first, ``order[1]`` second, ..."""
        rank = [0] * len(order)
        for i, v in enumerate(order):
            rank[v] = i + 1
        return cls(tuple(rank))

    @classmethod
    def identity(cls, n: int) -> Labeling:
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.rank)

    def order(self) -> list[int]:
        """Vertices sorted by increasing rank."""
        return sorted(range(self.n), key=self.rank.__getitem__)

    def reversed(self) -> Labeling:
        n = self.n
        return Labeling(tuple(n + 1 - r for r in self.rank))


@dataclass(frozen=True)
class FvsResult:
    S: frozenset[int]
    labeling: Labeling

    @property
    def size(self) -> int:
        return len(self.S)


def _check_labeling(D: Digraph, L: Labeling) -> None:
    if L.n != D.n:
        raise ValueError(f"labeling covers {L.n} vertices but the digraph has {D.n}")


def run_dl(D: Digraph, L: Labeling) -> FvsResult:
    _check_labeling(D, L)
    return FvsResult(frozenset(kernels.dl_members(D, L.rank)), L)


def random_labeling(n: int, rng: np.random.Generator | int | None = None) -> Labeling:
    """Uniform labelling (Fisher-Yates shuffle of the rank sequence)."""
    rng = np.random.default_rng(rng)
    return Labeling(tuple(int(r) for r in rng.permutation(n) + 1))


def sample_acyclic_set(D: Digraph, pi: Labeling) -> frozenset[int]:
    """Vertices ranked before all their out-neighbours or before all their in-neighbours."""
    _check_labeling(D, pi)
    rank = pi.rank
    chosen = []
    for v in range(D.n):
        r = rank[v]
        if all(rank[w] > r for w in D.out_nbrs(v)) or all(rank[w] > r for w in D.in_nbrs(v)):
            chosen.append(v)
    return frozenset(chosen)


def is_fvs(D: Digraph, S: Iterable[int]) -> bool:
    removed = set(S)
    return D.is_acyclic_induced(v for v in range(D.n) if v not in removed)


def optimal_labeling(D: Digraph, s_star: Iterable[int]) -> Labeling:
    """Labelling under which DL returns exactly the inclusion-minimal FVS ``s_star``.

    ``s_star`` takes ranks ``1..|s_star|`` in increasing vertex order; the rest
    follow a topological order of ``D - s_star`` (smallest index first).
    Raises ``ValueError`` if ``s_star`` is not a feedback vertex set, or if it is
    not minimal (detected when DL's output differs from it).
    """
    s = sorted(set(s_star))
    for v in s:
        if not 0 <= v < D.n:
            raise ValueError(f"vertex {v} outside 0..{D.n - 1}")
    members = set(s)
    rest = [v for v in range(D.n) if v not in members]
    if not D.is_acyclic_induced(rest):
        raise ValueError("given set is not a feedback vertex set")
    L = Labeling.from_order(s + D.topological_order(rest))
    got = run_dl(D, L).S
    if got != members:
        raise ValueError(
            f"given FVS is not inclusion-minimal: DL returned {sorted(got)} instead of {s}"
        )
    return L


def worst_case_size(D: Digraph) -> int:
    """Deterministic upper bound ``n - c`` on ``|S|``."""
    return D.n - D.components.c
