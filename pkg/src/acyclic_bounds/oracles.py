"""Brute-force ground truth.

Everything here is computed from definitions, independently of the closed
forms: maximum acyclic sets by subset enumeration, DL moments and event
frequencies by enumerating every labelling, and Monte Carlo estimates where
enumeration is out of reach.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

import numpy as np

from acyclic_bounds import kernels
from acyclic_bounds.digraph import Digraph
from acyclic_bounds.variance import PieTerms

MAX_BRUTE_N = 15
MAX_ENUM_N = 8
MC_BATCH = 8192


class OracleTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ExactStats:
    expected: float
    variance: float
    distribution: dict[int, int]
    expected_exact: Fraction
    variance_exact: Fraction

    @property
    def labelings(self) -> int:
        return sum(self.distribution.values())


@dataclass(frozen=True)
class McStats:
    mean: float
    sample_var: float
    trials: int
    seed: int | None
    var_defined: bool = True

    @property
    def stderr(self) -> float:
        return math.sqrt(self.sample_var / self.trials) if self.var_defined else float("nan")


def _component_alpha(D: Digraph, group: list[int]) -> list[int]:
    index = {v: i for i, v in enumerate(group)}
    in_masks = []
    for v in group:
        mask = 0
        for w in D.in_nbrs(v):
            mask |= 1 << index[w]
        in_masks.append(mask)
    best = kernels.max_acyclic_mask(len(group), in_masks)
    return [v for i, v in enumerate(group) if best >> i & 1]


def brute_alpha(D: Digraph) -> tuple[int, frozenset[int]]:
    """Maximum acyclic set size and a witness; additive over weak components."""
    if D.n > MAX_BRUTE_N:
        raise OracleTooLarge(f"subset enumeration is limited to n <= {MAX_BRUTE_N}, got {D.n}")
    witness: list[int] = []
    for group in D.components.groups():
        witness.extend(_component_alpha(D, group))
    return len(witness), frozenset(witness)


def brute_beta(D: Digraph) -> tuple[int, frozenset[int]]:
    """Minimum feedback vertex set size and a witness (complement of a maximum acyclic set)."""
    alpha, acyclic = brute_alpha(D)
    return D.n - alpha, frozenset(range(D.n)) - acyclic


@lru_cache(maxsize=None)
def all_rankings(n: int) -> np.ndarray:
    """Every bijection onto ``1..n`` as rows of a read-only ``(n!, n)`` rank matrix."""
    if n > MAX_ENUM_N:
        raise OracleTooLarge(f"labelling enumeration is limited to n <= {MAX_ENUM_N}, got {n}")
    if n == 0:
        arr = np.zeros((1, 0), dtype=np.int64)
    else:
        arr = np.array(list(permutations(range(1, n + 1))), dtype=np.int64)
    arr.setflags(write=False)
    return arr


def enumerate_dl(D: Digraph) -> ExactStats:
    """Exact distribution of |S| over all n! labellings."""
    ranks = all_rankings(D.n)
    sizes = kernels.dl_sizes(D, ranks)
    dist = Counter(int(s) for s in sizes)
    total = ranks.shape[0]
    mean = Fraction(sum(s * c for s, c in dist.items()), total)
    second = Fraction(sum(s * s * c for s, c in dist.items()), total)
    var = second - mean * mean
    return ExactStats(
        expected=float(mean),
        variance=float(var),
        distribution=dict(sorted(dist.items())),
        expected_exact=mean,
        variance_exact=var,
    )


def exclusion_events(D: Digraph, ranks: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Boolean ``(rows, n)`` arrays for ``E_v^-`` and ``E_v^+`` under each labelling.

    ``E_v^-``: every in-neighbour of ``v`` has a smaller rank; ``E_v^+`` likewise
    for out-neighbours.
    """
    rows = ranks.shape[0]
    e_minus = np.ones((rows, D.n), dtype=bool)
    e_plus = np.ones((rows, D.n), dtype=bool)
    for v in range(D.n):
        rv = ranks[:, v : v + 1]
        ins = list(D.in_nbrs(v))
        outs = list(D.out_nbrs(v))
        if ins:
            e_minus[:, v] = (ranks[:, ins] < rv).all(axis=1)
        if outs:
            e_plus[:, v] = (ranks[:, outs] < rv).all(axis=1)
    return e_minus, e_plus


def event_frequencies(D: Digraph, u: int, v: int) -> PieTerms:
    """The fifteen intersection probabilities for ``(u, v)`` counted over all labellings."""
    return all_event_frequencies(D, [(u, v)])[(u, v)]


def all_event_frequencies(
    D: Digraph, pairs: list[tuple[int, int]] | None = None
) -> dict[tuple[int, int], PieTerms]:
    ranks = all_rankings(D.n)
    total = ranks.shape[0]
    e_minus, e_plus = exclusion_events(D, ranks)
    if pairs is None:
        pairs = [(u, v) for u in range(D.n) for v in range(u + 1, D.n)]
    out = {}
    for u, v in pairs:
        um, up, vm, vp = e_minus[:, u], e_plus[:, u], e_minus[:, v], e_plus[:, v]
        events = (
            um, up, vm, vp,
            um & up, vm & vp, um & vm, um & vp, up & vm, up & vp,
            um & up & vm, um & up & vp, um & vm & vp, up & vm & vp,
            um & up & vm & vp,
        )
        probs = [int(e.sum()) / total for e in events]
        out[(u, v)] = PieTerms(*probs, case=D.pair_overlap(u, v).case)
    return out


def exact_joint_in_s(D: Digraph, u: int, v: int) -> float:
    """P(u, v in S) by enumeration."""
    ranks = all_rankings(D.n)
    e_minus, e_plus = exclusion_events(D, ranks)
    in_u = ~(e_minus[:, u] | e_plus[:, u])
    in_v = ~(e_minus[:, v] | e_plus[:, v])
    return float((in_u & in_v).sum()) / ranks.shape[0]


def monte_carlo_dl(D: Digraph, trials: int, seed: int | None = None) -> McStats:
    """Mean and Bessel-corrected variance of |S| over i.i.d. uniform labellings."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    base = np.arange(1, D.n + 1, dtype=np.int64)
    chunks = []
    done = 0
    while done < trials:
        b = min(MC_BATCH, trials - done)
        ranks = rng.permuted(np.tile(base, (b, 1)), axis=1)
        chunks.append(kernels.dl_sizes(D, ranks))
        done += b
    sizes = np.concatenate(chunks).astype(np.float64)
    if trials == 1:
        return McStats(float(sizes[0]), 0.0, 1, seed, var_defined=False)
    return McStats(float(sizes.mean()), float(sizes.var(ddof=1)), trials, seed)
