"""First-moment lower bounds on the maximum acyclic set.

``rho(D, v)`` is the probability that ``v`` precedes all of its out-neighbours
or all of its in-neighbours in a uniform random vertex order. Summing it gives
the AGJS bound; re-applying it to the residual graph left after deleting the
random acyclic set and its neighbourhood gives the neighbourhood refinement.
"""

from __future__ import annotations

from dataclasses import dataclass

from acyclic_bounds.digraph import Digraph


def monotone_f(x: float, y: float, z: float) -> float:
    """``1/(1+x) + 1/(1+y) - 1/(1+x+y-z)``, nonincreasing in each argument.

    Defined on ``x, y >= 0`` and ``0 <= z <= min(x, y)``.
    """
    if x < 0 or y < 0 or z < 0 or z > min(x, y):
        raise ValueError(f"f({x}, {y}, {z}) outside x, y >= 0, 0 <= z <= min(x, y)")
    return 1.0 / (1 + x) + 1.0 / (1 + y) - 1.0 / (1 + x + y - z)


def rho(D: Digraph, v: int) -> float:
    s = D.vertex_stats(v)
    return 1.0 / (1 + s.d_out) + 1.0 / (1 + s.d_in) - 1.0 / (1 + s.d_tot)


def rho_table(D: Digraph) -> list[float]:
    return [rho(D, v) for v in range(D.n)]


def agjs_bound(D: Digraph) -> float:
    total = 0.0
    for r in rho_table(D):
        total += r
    return total


def gruber_bound(D: Digraph) -> float:
    """Weaker out-degree-only bound, kept as a diagnostic."""
    return sum(1.0 / (1 + len(D.out_nbrs(v))) for v in range(D.n))


@dataclass(frozen=True)
class NeighborhoodBoundReport:
    agjs: float
    refined: float
    per_vertex_gain: tuple[float, ...]

    @property
    def delta(self) -> float:
        return self.refined - self.agjs


def neighborhood_bound(D: Digraph, rhos: list[float] | None = None) -> NeighborhoodBoundReport:
    r = rho_table(D) if rhos is None else rhos
    agjs = 0.0
    gains = []
    for v in range(D.n):
        slack = 1.0 - r[v]
        for u in D.nbrs(v):  # 2-cycle partners counted once
            slack -= r[u]
        gains.append(r[v] * max(0.0, slack))
        agjs += r[v]
    gain_total = 0.0
    for x in gains:
        gain_total += x
    return NeighborhoodBoundReport(agjs=agjs, refined=agjs + gain_total, per_vertex_gain=tuple(gains))
