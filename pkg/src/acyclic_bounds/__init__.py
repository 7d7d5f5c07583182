"""Lower bounds on the maximum induced acyclic set of a digraph.

Quick use::

    from acyclic_bounds import build, compute_bounds
    report = compute_bounds(build(3, [(0, 1), (1, 2)]))
    report.variance_bound   # 2.8
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from acyclic_bounds.bounds import agjs_bound, gruber_bound, neighborhood_bound, rho, rho_table
from acyclic_bounds.digraph import (
    Digraph,
    GraphFormatError,
    PairCase,
    build,
    parse_edge_list,
    read_edge_list,
    serialize_edge_list,
    write_edge_list,
)
from acyclic_bounds.dl import Labeling, is_fvs, optimal_labeling, random_labeling, run_dl
from acyclic_bounds.variance import CatalogError, variance_bound, variance_of_s

__all__ = [
    "BoundsReport",
    "CatalogError",
    "Digraph",
    "GraphFormatError",
    "Labeling",
    "PairCase",
    "agjs_bound",
    "build",
    "compute_bounds",
    "gruber_bound",
    "is_fvs",
    "neighborhood_bound",
    "optimal_labeling",
    "parse_edge_list",
    "random_labeling",
    "read_edge_list",
    "rho",
    "rho_table",
    "run_dl",
    "serialize_edge_list",
    "variance_bound",
    "variance_of_s",
    "write_edge_list",
]

__version__ = "0.1.0"


@dataclass(frozen=True)
class BoundsReport:
    n: int
    m: int
    c: int
    agjs: float
    neighborhood_bound: float
    var_s: float
    variance_bound: float
    delta_neigh: float
    delta_var: float
    degenerate: bool
    gruber: float

    def as_dict(self) -> dict:
        return asdict(self)


def compute_bounds(D: Digraph) -> BoundsReport:
    """Every bound for one digraph, sharing the rho table."""
    rhos = rho_table(D)
    nb = neighborhood_bound(D, rhos)
    vb = variance_bound(D, variance_of_s(D, rhos=rhos))
    return BoundsReport(
        n=D.n,
        m=D.m,
        c=vb.c,
        agjs=vb.agjs,
        neighborhood_bound=nb.refined,
        var_s=vb.var_s,
        variance_bound=vb.bound,
        delta_neigh=nb.delta,
        delta_var=vb.correction,
        degenerate=vb.degenerate,
        gruber=gruber_bound(D),
    )
