"""Command-line entry point: ``acyclic-bounds {bounds,experiment,verify,gen}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from acyclic_bounds import compute_bounds
from acyclic_bounds.digraph import GraphFormatError, read_edge_list, serialize_edge_list
from acyclic_bounds.experiments import PARAM_ORDER, PRESETS, ExperimentConfig, render, run_experiment
from acyclic_bounds.models import MODELS, generate
from acyclic_bounds.verify import run_verification

SEED_ENV = "ACYCLIC_BOUNDS_SEED"

log = logging.getLogger("acyclic_bounds")


def _resolve_seed(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env is None or env.strip() == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise SystemExit(f"error: {SEED_ENV}={env!r} is not an integer") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _model_params(args: argparse.Namespace) -> dict[str, list[float]]:
    given = {k: getattr(args, k) for k in ("p", "p_low", "q1", "q2", "q3", "a")}
    wanted = PARAM_ORDER[args.model]
    missing = [k for k in wanted if given[k] is None]
    if missing:
        flags = ", ".join("--" + k.replace("_", "-") for k in missing)
        raise SystemExit(f"error: model {args.model} needs {flags}")
    extra = [k for k, v in given.items() if v is not None and k not in wanted]
    if extra:
        flags = ", ".join("--" + k.replace("_", "-") for k in extra)
        raise SystemExit(f"error: model {args.model} does not take {flags}")
    return {k: given[k] for k in wanted}


def cmd_bounds(args: argparse.Namespace) -> int:
    try:
        D = read_edge_list(args.file)
    except (OSError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = compute_bounds(D)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        for key, value in report.as_dict().items():
            print(f"{key}: {value:.6f}" if isinstance(value, float) else f"{key}: {value}")
    return 0


def cmd_experiment(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    try:
        if args.preset:
            config = ExperimentConfig.from_preset(args.preset, seed, args.format, args.graphs)
        else:
            if args.model is None or args.n is None:
                raise SystemExit("error: --model and --n are required without --preset")
            config = ExperimentConfig(
                model=args.model,
                n_list=tuple(args.n),
                params={k: tuple(v) for k, v in _model_params(args).items()},
                graphs_per_cell=args.graphs or 100,
                master_seed=seed,
                fmt=args.format,
            )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    log.info("master seed %d", config.master_seed)
    cells = run_experiment(config, workers=args.workers)
    _emit(render(cells, config), args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        report = run_verification(
            max_n=args.max_n,
            samples=args.samples,
            seed=_resolve_seed(args.seed),
            inject_fault=args.inject_fault,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.render())
    return 0 if report.passed else 1


def cmd_gen(args: argparse.Namespace) -> int:
    params = {k: v[0] for k, v in _model_params(args).items()}
    try:
        D = generate(args.model, seed=_resolve_seed(args.seed), n=args.n[0], **params)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(serialize_edge_list(D), args.out)
    return 0


def _add_model_flags(p: argparse.ArgumentParser, multi: bool) -> None:
    nargs = "+" if multi else 1
    p.add_argument("--model", choices=sorted(MODELS), required=not multi)
    p.add_argument("--n", type=int, nargs=nargs, required=not multi)
    p.add_argument("--p", type=float, nargs=nargs, help="arc probability (er, bipartite)")
    p.add_argument("--p-low", type=float, nargs=nargs, help="fraction of low-degree vertices (two-type)")
    p.add_argument("--q1", type=float, nargs=nargs, help="high-high arc probability (two-type)")
    p.add_argument("--q2", type=float, nargs=nargs, help="high-low arc probability (two-type)")
    p.add_argument("--q3", type=float, nargs=nargs, help="low-low arc probability (two-type)")
    p.add_argument("--a", type=float, nargs=nargs, help="fraction of vertices in part A (bipartite)")
    p.add_argument("--seed", type=int, default=None, help=f"master seed (default: ${SEED_ENV} or 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="acyclic-bounds", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="lower bounds for one edge-list file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("experiment", parents=[common], help="mean bound improvements over random models")
    _add_model_flags(p, multi=True)
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--graphs", type=int, default=None, help="graphs per cell (default 100, or the preset's)")
    p.add_argument("--format", choices=("csv", "md"), default="csv")
    p.add_argument("--out")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("verify", parents=[common], help="check closed forms against brute force")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", parents=[common], help="sample one random digraph as an edge list")
    _add_model_flags(p, multi=False)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
