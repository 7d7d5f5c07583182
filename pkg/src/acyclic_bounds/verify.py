"""Oracle verification suite.

Runs the closed forms against brute force on small digraphs: every digraph up
to a small order, then random ER samples. The first failing graph of each
check is kept, serialized, for the report.
"""

from __future__ import annotations

import contextlib
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from acyclic_bounds.bounds import neighborhood_bound, rho_table
from acyclic_bounds.digraph import (
    Digraph,
    all_digraphs,
    complete_symmetric,
    disjoint_union,
    every_component_complete_symmetric,
    serialize_edge_list,
)
from acyclic_bounds.dl import (
    Labeling,
    is_fvs,
    optimal_labeling,
    random_labeling,
    run_dl,
    sample_acyclic_set,
)
from acyclic_bounds.kernels import _py
from acyclic_bounds.models import generate
from acyclic_bounds.oracles import all_event_frequencies, all_rankings, brute_alpha, brute_beta, enumerate_dl
from acyclic_bounds.variance import TERM_NAMES, CatalogError, pie_terms, variance_bound, variance_of_s

TOL = 1e-10
SLACK = 1e-9
EXHAUSTIVE_N = 4
DUALITY_MAX_N = 6
DENSITIES = tuple(round(0.1 * k, 1) for k in range(1, 10))


@dataclass
class CheckResult:
    name: str
    graphs: int = 0
    failures: int = 0
    first_failure: str | None = None
    detail: str | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class VerifyReport:
    checks: dict[str, CheckResult] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def render(self) -> str:
        lines = []
        for c in self.checks.values():
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{status} {c.name}: {c.graphs} graphs, {c.failures} failures")
            if not c.passed:
                lines.append(f"  {c.detail}")
                lines.append("  counterexample:")
                lines.extend("    " + ln for ln in c.first_failure.splitlines())
        lines.append(f"{'PASS' if self.passed else 'FAIL'} overall ({self.seconds:.1f}s)")
        return "\n".join(lines)


def check_variance(D: Digraph) -> str | None:
    ex = enumerate_dl(D)
    rep = variance_of_s(D)
    if abs(rep.expected_s - ex.expected) > TOL:
        return f"E|S| closed form {rep.expected_s!r} vs enumeration {ex.expected!r}"
    if abs(rep.var_s - ex.variance) > TOL:
        return f"Var|S| closed form {rep.var_s!r} vs enumeration {ex.variance!r}"
    return None


def check_catalog(D: Digraph) -> str | None:
    freqs = all_event_frequencies(D)
    for (u, v), want in freqs.items():
        try:
            got = pie_terms(D, u, v)
        except CatalogError as exc:
            return f"pair ({u}, {v}): {exc}"
        for name, a, b in zip(TERM_NAMES, got.values(), want.values()):
            if abs(a - b) > TOL:
                return f"pair ({u}, {v}) [{want.case.value}] term {name}: {a!r} vs counted {b!r}"
    return None


def check_sandwich(D: Digraph) -> str | None:
    alpha, _ = brute_alpha(D)
    rhos = rho_table(D)
    nb = neighborhood_bound(D, rhos)
    vb = variance_bound(D, variance_of_s(D, rhos=rhos))
    if not nb.agjs <= nb.refined + SLACK:
        return f"neighborhood bound {nb.refined!r} below AGJS {nb.agjs!r}"
    if not nb.refined <= alpha + SLACK:
        return f"neighborhood bound {nb.refined!r} exceeds alpha {alpha}"
    if not vb.agjs <= vb.bound + SLACK:
        return f"variance bound {vb.bound!r} below AGJS {vb.agjs!r}"
    if not vb.bound <= alpha + SLACK:
        return f"variance bound {vb.bound!r} exceeds alpha {alpha}"
    return None


def check_fvs(D: Digraph, labelings: list[Labeling]) -> str | None:
    cap = D.n - D.components.c
    for L in labelings:
        S = run_dl(D, L).S
        if not is_fvs(D, S):
            return f"DL output {sorted(S)} under ranks {L.rank} is not a feedback vertex set"
        if len(S) > cap:
            return f"|S| = {len(S)} exceeds n - c = {cap} under ranks {L.rank}"
    return None


def check_duality(D: Digraph) -> str | None:
    everything = frozenset(range(D.n))
    for row in all_rankings(D.n):
        pi = Labeling(tuple(int(r) for r in row))
        chosen = sample_acyclic_set(D, pi)
        if chosen != everything - run_dl(D, pi.reversed()).S:
            return f"I(pi) != V - S(reverse pi) for ranks {pi.rank}"
    return None


def check_optimal(D: Digraph) -> str | None:
    _, s_star = brute_beta(D)
    L = optimal_labeling(D, s_star)
    got = run_dl(D, L).S
    if got != s_star:
        return f"DL returned {sorted(got)} instead of minimum FVS {sorted(s_star)}"
    return None


def check_degenerate(D: Digraph) -> str | None:
    vb = variance_bound(D)
    structural = every_component_complete_symmetric(D)
    if vb.degenerate != structural:
        return f"degenerate flag {vb.degenerate} but complete-symmetric check {structural}"
    return None


def _record(result: CheckResult, D: Digraph, fn: Callable[[], str | None]) -> None:
    result.graphs += 1
    try:
        msg = fn()
    except Exception as exc:  # a crash is a failure of the check, not of the harness
        msg = f"{type(exc).__name__}: {exc}"
    if msg is not None:
        result.failures += 1
        if result.first_failure is None:
            result.first_failure = serialize_edge_list(D)
            result.detail = msg


def instance_set(max_n: int, samples: int, seed: int) -> Iterator[Digraph]:
    """All digraphs up to order min(max_n, 4), then ``samples`` random ER digraphs.

    Random orders run over ``5..max_n`` (or ``2..max_n`` when ``max_n < 5``) and
    densities cycle through 0.1..0.9, so dense samples supply plenty of 2-cycles.
    """
    for n in range(1, min(max_n, EXHAUSTIVE_N) + 1):
        yield from all_digraphs(n)
    lo = 5 if max_n >= 5 else 2
    rng = np.random.default_rng(seed)
    for k in range(samples):
        n = int(rng.integers(lo, max_n + 1))
        yield generate("er", seed=rng, n=n, p=DENSITIES[k % len(DENSITIES)])


def degenerate_constructions(max_n: int = 12) -> Iterator[Digraph]:
    """Unions of complete symmetric digraphs plus each with one arc dropped."""
    for total in range(1, max_n + 1):
        for parts in _partitions(total):
            D = disjoint_union(*(complete_symmetric(m) for m in parts))
            yield D
            if D.m:
                arcs = D.sorted_arcs()
                yield Digraph(D.n, arcs[1:])


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k, *rest)


def run_verification(
    max_n: int = 7,
    samples: int = 200,
    seed: int = 0,
    labelings_per_graph: int = 20,
    inject_fault: bool = False,
) -> VerifyReport:
    if not 1 <= max_n <= 8:
        raise ValueError(f"max_n must lie in 1..8 for permutation checks, got {max_n}")
    start = time.perf_counter()
    names = ("variance", "catalog", "sandwich", "fvs", "duality", "optimal", "degenerate")
    checks = {k: CheckResult(k) for k in names}
    rng = np.random.default_rng([seed, 1])
    fault = _py.injected_fault() if inject_fault else contextlib.nullcontext()
    with fault:
        for D in instance_set(max_n, samples, seed):
            _record(checks["variance"], D, lambda: check_variance(D))
            _record(checks["catalog"], D, lambda: check_catalog(D))
            _record(checks["sandwich"], D, lambda: check_sandwich(D))
            labs = [random_labeling(D.n, rng) for _ in range(labelings_per_graph)]
            _record(checks["fvs"], D, lambda: check_fvs(D, labs))
            if D.n <= DUALITY_MAX_N:
                _record(checks["duality"], D, lambda: check_duality(D))
            _record(checks["optimal"], D, lambda: check_optimal(D))
            _record(checks["degenerate"], D, lambda: check_degenerate(D))
        for D in degenerate_constructions():
            _record(checks["degenerate"], D, lambda: check_degenerate(D))
    return VerifyReport(checks, time.perf_counter() - start)
