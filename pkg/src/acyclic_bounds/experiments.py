"""Random-model experiments: mean bound improvements over batches of graphs.

Each cell of a table is one (model, n, parameters) combination. For every graph
in a cell the AGJS bound and both improvements are computed exactly, then
averaged. Graph ``j`` of cell ``i`` is generated from
``SeedSequence([master_seed, i, j])``, so a master seed reproduces a table
byte for byte regardless of worker count.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from acyclic_bounds.bounds import neighborhood_bound, rho_table
from acyclic_bounds.digraph import Digraph
from acyclic_bounds.models import MODELS, generate
from acyclic_bounds.variance import variance_bound, variance_of_s

PARAM_ORDER = {
    "er": ("p",),
    "two-type": ("p_low", "q1", "q2", "q3"),
    "bipartite": ("a", "p"),
}

PRESETS: dict[str, dict] = {
    "er": {"model": "er", "n": [100], "params": {"p": [0.05, 0.50, 0.95]}, "graphs": 1000},
    "two-type-sparse": {
        "model": "two-type", "n": [100, 150, 200], "graphs": 100,
        "params": {"p_low": [0.90], "q1": [0.70], "q2": [0.50], "q3": [0.005, 0.01]},
    },
    "two-type-mid": {
        "model": "two-type", "n": [100, 150, 200], "graphs": 100,
        "params": {"p_low": [0.90], "q1": [0.70], "q2": [0.50], "q3": [0.02, 0.025]},
    },
    "two-type-dense": {
        "model": "two-type", "n": [100, 150, 200], "graphs": 100,
        "params": {"p_low": [0.90], "q1": [0.70], "q2": [0.50], "q3": [0.05, 0.10]},
    },
    "bipartite-small": {"model": "bipartite", "n": [100, 150, 200], "graphs": 100, "params": {"a": [0.05, 0.10], "p": [0.65]}},
    "bipartite-mid": {"model": "bipartite", "n": [100, 150, 200], "graphs": 100, "params": {"a": [0.15, 0.20], "p": [0.65]}},
    "bipartite-large": {"model": "bipartite", "n": [100, 150, 200], "graphs": 100, "params": {"a": [0.25, 0.30], "p": [0.65]}},
}


@dataclass(frozen=True)
class ExperimentConfig:
    model: str
    n_list: tuple[int, ...]
    params: dict[str, tuple[float, ...]]
    graphs_per_cell: int
    master_seed: int = 0
    fmt: str = "csv"

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; choose from {sorted(MODELS)}")
        if self.graphs_per_cell < 1:
            raise ValueError("graphs per cell must be at least 1")
        if not self.n_list:
            raise ValueError("need at least one n")
        if self.fmt not in ("csv", "md"):
            raise ValueError(f"format must be 'csv' or 'md', got {self.fmt!r}")
        expected = set(PARAM_ORDER[self.model])
        given = set(self.params)
        if given != expected:
            raise ValueError(
                f"model {self.model!r} takes parameters {sorted(expected)}, got {sorted(given)}"
            )
        for name, values in self.params.items():
            if not values:
                raise ValueError(f"parameter {name} has no values")
        # validates ranges once, before any work starts
        for cell in self.cells():
            MODELS[self.model][0](**cell)

    @classmethod
    def from_preset(cls, name: str, master_seed: int = 0, fmt: str = "csv", graphs: int | None = None) -> ExperimentConfig:
        try:
            preset = PRESETS[name]
        except KeyError:
            raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
        return cls.from_dict({**preset, "seed": master_seed, "format": fmt, "graphs": graphs or preset["graphs"]})

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentConfig:
        return cls(
            model=d["model"],
            n_list=tuple(int(x) for x in d["n"]),
            params={k: tuple(float(x) for x in v) for k, v in d["params"].items()},
            graphs_per_cell=int(d["graphs"]),
            master_seed=int(d.get("seed", 0)),
            fmt=d.get("format", "csv"),
        )

    def cells(self) -> list[dict]:
        """Cell parameter dicts in output order: n outermost, then parameters in declared order."""
        names = PARAM_ORDER[self.model]
        grid = list(itertools.product(*(self.params[k] for k in names)))
        return [{"n": n, **dict(zip(names, combo))} for n in self.n_list for combo in grid]


@dataclass(frozen=True)
class GraphResult:
    agjs: float
    d_neigh: float
    d_var: float
    degenerate: bool


@dataclass(frozen=True)
class TableCell:
    model: str
    params: dict
    graphs: int
    agjs: float
    agjs_se: float
    d_neigh: float
    d_neigh_se: float
    d_var: float
    d_var_se: float
    per_graph: list[GraphResult] = field(default_factory=list, repr=False, compare=False)


def evaluate_graph(D: Digraph) -> GraphResult:
    rhos = rho_table(D)
    nb = neighborhood_bound(D, rhos)
    vb = variance_bound(D, variance_of_s(D, rhos=rhos))
    return GraphResult(agjs=vb.agjs, d_neigh=nb.delta, d_var=vb.correction, degenerate=vb.degenerate)


def graph_seed(master_seed: int, cell_index: int, graph_index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([master_seed, cell_index, graph_index])


def _run_one(args: tuple[str, dict, int, int, int]) -> GraphResult:
    model, cell, master, i, j = args
    D = generate(model, seed=graph_seed(master, i, j), **cell)
    return evaluate_graph(D)


def _mean_se(xs: Sequence[float]) -> tuple[float, float]:
    arr = np.asarray(xs, dtype=np.float64)
    if arr.size < 2:
        return float(arr.mean()), 0.0
    return float(arr.mean()), float(arr.std(ddof=1) / math.sqrt(arr.size))


def summarize(model: str, cell: dict, results: list[GraphResult]) -> TableCell:
    a, a_se = _mean_se([r.agjs for r in results])
    dn, dn_se = _mean_se([r.d_neigh for r in results])
    dv, dv_se = _mean_se([r.d_var for r in results])
    return TableCell(model, dict(cell), len(results), a, a_se, dn, dn_se, dv, dv_se, results)


def run_experiment(config: ExperimentConfig, workers: int = 1) -> list[TableCell]:
    cells = config.cells()
    jobs = [
        (config.model, cell, config.master_seed, i, j)
        for i, cell in enumerate(cells)
        for j in range(config.graphs_per_cell)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=max(1, len(jobs) // (8 * workers))))
    else:
        results = [_run_one(job) for job in jobs]
    k = config.graphs_per_cell
    return [summarize(config.model, cell, results[i * k : (i + 1) * k]) for i, cell in enumerate(cells)]


def _header(model: str) -> list[str]:
    return ["model", "n", *PARAM_ORDER[model], "graphs", "agjs_mean", "agjs_se",
            "dneigh_mean", "dneigh_se", "dvar_mean", "dvar_se"]


def _row(cell: TableCell) -> list[str]:
    params = [f"{cell.params[k]:g}" for k in PARAM_ORDER[cell.model]]
    stats = [cell.agjs, cell.agjs_se, cell.d_neigh, cell.d_neigh_se, cell.d_var, cell.d_var_se]
    return [cell.model, str(cell.params["n"]), *params, str(cell.graphs), *(f"{x:.4f}" for x in stats)]


def to_csv(cells: list[TableCell]) -> str:
    if not cells:
        return ""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_header(cells[0].model))
    for c in cells:
        w.writerow(_row(c))
    return buf.getvalue()


def to_markdown(cells: list[TableCell], master_seed: int | None = None) -> str:
    if not cells:
        return ""
    header = _header(cells[0].model)
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines.extend("| " + " | ".join(_row(c)) + " |" for c in cells)
    if master_seed is not None:
        lines.append("")
        lines.append(f"master seed: {master_seed}")
    return "\n".join(lines) + "\n"


def render(cells: list[TableCell], config: ExperimentConfig) -> str:
    return to_markdown(cells, config.master_seed) if config.fmt == "md" else to_csv(cells)
