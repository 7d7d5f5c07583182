from __future__ import annotations

import csv
import io

import pytest

from acyclic_bounds.digraph import complete_symmetric, directed_cycle
from acyclic_bounds.experiments import (
    PRESETS,
    ExperimentConfig,
    evaluate_graph,
    render,
    run_experiment,
    to_csv,
    to_markdown,
)


def _config(**overrides) -> ExperimentConfig:
    base = dict(model="er", n_list=(15, 20), params={"p": (0.2, 0.6)}, graphs_per_cell=4, master_seed=3)
    base.update(overrides)
    return ExperimentConfig(**base)


class TestConfig:
    def test_cell_order(self):
        cells = _config().cells()
        assert [(c["n"], c["p"]) for c in cells] == [(15, 0.2), (15, 0.6), (20, 0.2), (20, 0.6)]

    @pytest.mark.parametrize(
        "overrides",
        [
            {"model": "ring"},
            {"graphs_per_cell": 0},
            {"n_list": ()},
            {"fmt": "xlsx"},
            {"params": {"p": (0.2,), "a": (0.1,)}},
            {"params": {"p": ()}},
            {"params": {"p": (1.2,)}},
        ],
    )
    def test_rejects(self, overrides):
        with pytest.raises(ValueError):
            _config(**overrides)

    @pytest.mark.parametrize("name", sorted(PRESETS))
    def test_presets_valid(self, name):
        cfg = ExperimentConfig.from_preset(name, master_seed=1)
        assert cfg.cells()

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            ExperimentConfig.from_preset("no-such-preset")

    def test_preset_graph_override(self):
        assert ExperimentConfig.from_preset("bipartite-small", graphs=3).graphs_per_cell == 3


def test_evaluate_examples():
    r = evaluate_graph(directed_cycle(3))
    assert (r.agjs, r.d_neigh) == (pytest.approx(2.0), 0.0)
    assert r.d_var == pytest.approx(0.0, abs=1e-12)
    assert evaluate_graph(complete_symmetric(2)).degenerate


class TestRun:
    def test_deterministic_bytes(self):
        cfg = _config()
        assert to_csv(run_experiment(cfg)) == to_csv(run_experiment(cfg))

    def test_workers_do_not_change_output(self):
        cfg = _config(graphs_per_cell=3)
        assert to_csv(run_experiment(cfg, workers=2)) == to_csv(run_experiment(cfg))

    def test_seed_matters(self):
        assert to_csv(run_experiment(_config())) != to_csv(run_experiment(_config(master_seed=4)))

    def test_cells_are_independent_of_grid(self):
        # a cell's graphs depend on its index only, so the first cell is stable under extra n values
        a = run_experiment(_config(n_list=(15,)))[0]
        b = run_experiment(_config(n_list=(15, 30)))[0]
        assert a == b

    def test_csv_schema(self):
        cells = run_experiment(_config(model="two-type", n_list=(20,),
                                       params={"p_low": (0.9,), "q1": (0.7,), "q2": (0.5,), "q3": (0.01,)}))
        rows = list(csv.reader(io.StringIO(to_csv(cells))))
        assert rows[0] == ["model", "n", "p_low", "q1", "q2", "q3", "graphs", "agjs_mean", "agjs_se",
                           "dneigh_mean", "dneigh_se", "dvar_mean", "dvar_se"]
        assert rows[1][:7] == ["two-type", "20", "0.9", "0.7", "0.5", "0.01", "4"]
        assert all(len(x.split(".")[1]) == 4 for x in rows[1][7:])

    def test_nonnegative_deltas(self):
        for cell in run_experiment(_config(graphs_per_cell=6)):
            assert cell.d_neigh >= 0 and cell.d_var >= 0
            assert len(cell.per_graph) == 6

    def test_markdown(self):
        cfg = _config(fmt="md", graphs_per_cell=2)
        text = render(run_experiment(cfg), cfg)
        lines = text.splitlines()
        assert lines[0].startswith("| model | n | p |")
        assert lines[1].startswith("|---|")
        assert lines[-1] == "master seed: 3"
        assert to_markdown([]) == "" and to_csv([]) == ""

    def test_single_graph_se_zero(self):
        cell = run_experiment(_config(graphs_per_cell=1, n_list=(10,), params={"p": (0.3,)}))[0]
        assert cell.agjs_se == 0.0
