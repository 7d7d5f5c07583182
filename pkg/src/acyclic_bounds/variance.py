"""Exact variance of the DL output size and the variance-based lower bound.

``Var(|S|) = sum_v rho_v (1 - rho_v) + 2 sum_{u<v} Cov(I_u, I_v)``. Each joint
probability ``P(u, v in S) = 1 - Psi(u, v)`` comes from inclusion-exclusion
over the four exclusion events ``E_u^-, E_u^+, E_v^-, E_v^+`` (``E_x^-``: no
in-neighbour of ``x`` is ranked after it). The fifteen intersection
probabilities depend only on degrees, the nine overlap counts of the pair and
whether the pair is nonadjacent, joined by one arc, or a 2-cycle.

The Bhatia-Davis inequality on ``beta <= |S| <= n - c`` then turns the
variance into an additive improvement over the AGJS bound.
"""

from __future__ import annotations

import logging
from dataclasses import astuple, dataclass, fields

from acyclic_bounds import kernels
from acyclic_bounds.bounds import rho_table
from acyclic_bounds.digraph import Digraph, PairCase, every_component_complete_symmetric
from acyclic_bounds.kernels import _py

log = logging.getLogger(__name__)

JOINT_SLACK = 1e-12
VARIANCE_SLACK = 1e-9
DEGENERATE_TOL = 1e-9


class CatalogError(ArithmeticError):
    """A computed probability left [0, 1] beyond rounding slack."""


def precedence_prob(x: int, y: int, t: int) -> float:
    """P(X precedes v and Y precedes w) for disjoint-from-{v, w} sets of sizes x, y sharing t."""
    if x < 0 or y < 0 or t < 0 or t > min(x, y):
        raise ValueError(f"g({x}, {y}, {t}) needs x, y >= 0 and 0 <= t <= min(x, y)")
    return _py.g(x, y, t)


@dataclass(frozen=True)
class PieTerms:
    """Fifteen intersection probabilities for the ordered pair ``(u, v)``.

    Field names list the events intersected: ``um`` is ``E_u^-``, ``up`` is
    ``E_u^+``, and likewise for ``v``.
    """

    um: float
    up: float
    vm: float
    vp: float
    um_up: float
    vm_vp: float
    um_vm: float
    um_vp: float
    up_vm: float
    up_vp: float
    um_up_vm: float
    um_up_vp: float
    um_vm_vp: float
    up_vm_vp: float
    um_up_vm_vp: float
    case: PairCase

    def values(self) -> tuple[float, ...]:
        return astuple(self)[:15]

    @property
    def psi(self) -> float:
        return _py.psi(self.values())

    def swapped(self) -> PieTerms:
        """The same probabilities indexed for the pair ``(v, u)``."""
        return PieTerms(
            um=self.vm, up=self.vp, vm=self.um, vp=self.up,
            um_up=self.vm_vp, vm_vp=self.um_up,
            um_vm=self.um_vm, um_vp=self.up_vm, up_vm=self.um_vp, up_vp=self.up_vp,
            um_up_vm=self.um_vm_vp, um_up_vp=self.up_vm_vp,
            um_vm_vp=self.um_up_vm, up_vm_vp=self.um_up_vp,
            um_up_vm_vp=self.um_up_vm_vp,
            case=self.case.swapped(),
        )


TERM_NAMES = tuple(f.name for f in fields(PieTerms))[:15]

_CASE_CODE = {
    PairCase.NONADJACENT: _py.NONADJACENT,
    PairCase.ARC_U_TO_V: _py.ARC_U_TO_V,
    PairCase.TWO_CYCLE: _py.TWO_CYCLE,
}


def pie_terms(D: Digraph, u: int, v: int) -> PieTerms:
    ov = D.pair_overlap(u, v)
    if ov.case is PairCase.ARC_V_TO_U:
        # the single-arc column is written for u -> v
        return pie_terms(D, v, u).swapped()
    su, sv = D.vertex_stats(u), D.vertex_stats(v)
    counts = (
        ov.n_in_in, ov.n_out_out, ov.n_in_out, ov.n_out_in, ov.n_any_in,
        ov.n_in_any, ov.n_any_out, ov.n_out_any, ov.n_any_any,
    )
    vals = _py.catalog(
        su.d_out, su.d_in, su.d_tot, sv.d_out, sv.d_in, sv.d_tot, counts, _CASE_CODE[ov.case]
    )
    return PieTerms(*vals, case=ov.case)


def joint_in_prob(D: Digraph, u: int, v: int) -> float:
    """P(u in S and v in S)."""
    p = 1.0 - pie_terms(D, u, v).psi
    if p < -JOINT_SLACK or p > 1.0 + JOINT_SLACK:
        raise CatalogError(f"P({u},{v} in S) = {p!r} outside [0, 1]")
    return min(1.0, max(0.0, p))


def covariance(D: Digraph, u: int, v: int) -> float:
    r_u, r_v = _rho(D, u), _rho(D, v)
    return joint_in_prob(D, u, v) - (1.0 - r_u) * (1.0 - r_v)


def _rho(D: Digraph, v: int) -> float:
    s = D.vertex_stats(v)
    return 1.0 / (1 + s.d_out) + 1.0 / (1 + s.d_in) - 1.0 / (1 + s.d_tot)


@dataclass(frozen=True)
class VarianceReport:
    expected_s: float
    var_s: float
    sum_rho: float
    c: int
    per_pair_cov: dict[tuple[int, int], float] | None = None


def variance_of_s(D: Digraph, per_pair: bool = False, rhos: list[float] | None = None) -> VarianceReport:
    r = rho_table(D) if rhos is None else rhos
    sum_rho = 0.0
    diag = 0.0
    for x in r:
        sum_rho += x
        diag += x * (1.0 - x)
    pairs = None
    if per_pair:
        pairs = {}
        cov_total = 0.0
        for u in range(D.n):
            for v in range(u + 1, D.n):
                cv = covariance(D, u, v)
                pairs[(u, v)] = cv
                cov_total += cv
    else:
        cov_total = kernels.covariance_sum(D, r)
    var = diag + 2.0 * cov_total
    if var < -VARIANCE_SLACK:
        raise CatalogError(f"negative variance {var!r}")
    return VarianceReport(
        expected_s=D.n - sum_rho,
        var_s=max(var, 0.0),
        sum_rho=sum_rho,
        c=D.components.c,
        per_pair_cov=pairs,
    )


@dataclass(frozen=True)
class VarianceBoundReport:
    agjs: float
    correction: float
    bound: float
    degenerate: bool
    var_s: float
    c: int


def variance_bound(D: Digraph, report: VarianceReport | None = None) -> VarianceBoundReport:
    """AGJS + Var(|S|) / (sum rho - c); the correction is zero when the denominator vanishes."""
    rep = variance_of_s(D) if report is None else report
    denom = rep.sum_rho - rep.c
    if denom < -DEGENERATE_TOL:
        raise CatalogError(f"sum(rho) - c = {denom!r} is negative")
    degenerate = denom <= DEGENERATE_TOL
    if degenerate != every_component_complete_symmetric(D):
        log.warning(
            "denominator test (%r) disagrees with the structural complete-symmetric check", denom
        )
    correction = 0.0 if degenerate else rep.var_s / denom
    return VarianceBoundReport(
        agjs=rep.sum_rho,
        correction=correction,
        bound=rep.sum_rho + correction,
        degenerate=degenerate,
        var_s=rep.var_s,
        c=rep.c,
    )
