"""Command-line benchmark harness.

Subcommands:

``cgoas run``       seeded replications of one algorithm; summary + traces
``cgoas sweep``     the same batch across a p_ind grid; sweep.csv
``cgoas trace``     two algorithms side by side; per-cycle diversity CSV
``cgoas validate``  check an instance file and a tour file against it

Every knob of :class:`~cgoas.experiments.ExperimentConfig` is exposed
both as a command-line flag and as a ``key = value`` line in a config
file (``--config``); flags override the file.  Exit status is 0 on
success and 1 on configuration or I/O errors, with a diagnostic on
stderr.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

import numpy as np

from .benchmarks import OPTIMAL_LENGTHS, find_instance, load_optimal_tour
from .cgo import ALGORITHMS
from .experiments import (
    DEFAULT_SWEEP_GRID,
    ExperimentConfig,
    ExperimentError,
    emit_diversity_trace,
    load_config_file,
    run_experiment,
    sweep_p_ind,
)
from .landscape import tour_length
from .tsplib import TsplibError, build_cost_matrix, parse_tsplib_file, parse_opt_tour_file


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key = value config file; flags override it")
    parser.add_argument("--instance", action="append", dest="instances",
                        metavar="NAME_OR_PATH",
                        help="bundled instance name or .tsp path (repeatable)")
    parser.add_argument("--algorithm", choices=ALGORITHMS)
    parser.add_argument("--k", type=int, help="agents per group")
    parser.add_argument("--t", type=int, help="cycles per run")
    parser.add_argument("--p-ind", type=float, dest="p_ind")
    parser.add_argument("--sigma-c", type=float, dest="sigma_c")
    parser.add_argument("--w", type=float, help="truncation half-width")
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--rho", type=float, help="trail persistence in [0,1)")
    parser.add_argument("--p-best", type=float, dest="p_best")
    parser.add_argument("--neighbors", type=int, help="candidate-list size")
    parser.add_argument("--runs", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out-dir", dest="out_dir")
    parser.add_argument("--f-star", action="append", dest="f_star_entries",
                        metavar="NAME:LENGTH",
                        help="known optimum override (repeatable)")
    parser.add_argument("--jobs", type=int, help="parallel runs (default 1)")
    parser.add_argument("--no-traces", action="store_true",
                        help="skip per-run trace files")


def _build_config(args: argparse.Namespace) -> ExperimentConfig:
    values: dict = {}
    if args.config:
        values.update(load_config_file(args.config))
    for key in ("algorithm", "k", "t", "p_ind", "sigma_c", "w", "alpha", "beta",
                "rho", "p_best", "neighbors", "runs", "seed", "out_dir", "jobs"):
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    if args.instances:
        values["instances"] = tuple(args.instances)
    if getattr(args, "f_star_entries", None):
        mapping = dict(values.get("f_star", {}))
        for entry in args.f_star_entries:
            name, sep, num = entry.partition(":")
            if not sep:
                raise ExperimentError(
                    f"--f-star expects NAME:LENGTH, got {entry!r}"
                )
            try:
                mapping[name.strip()] = int(num)
            except ValueError as exc:
                raise ExperimentError(
                    f"--f-star expects an integer length, got {entry!r}"
                ) from exc
        values["f_star"] = mapping
    if getattr(args, "no_traces", False):
        values["write_traces"] = False
    return ExperimentConfig(**values)


def _cmd_run(args: argparse.Namespace) -> int:
    config = _build_config(args)
    out = run_experiment(config)
    print(f"summary written to {out['summary']}")
    if out["traces"]:
        print(f"{len(out['traces'])} trace file(s) in {config.out_dir}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _build_config(args)
    grid = DEFAULT_SWEEP_GRID
    if args.grid:
        grid = tuple(float(v) for v in args.grid.split(","))
    out = sweep_p_ind(config, grid)
    print(f"sweep written to {out['sweep']}")
    for g in sorted(out["aggregate_mean_rpd"]):
        print(f"  p_ind={g:.2f}  aggregate mean RPD "
              f"{out['aggregate_mean_rpd'][g]:.4f}%")
    return 0


def _cmd_trace(args: argparse.Namespace) -> int:
    config = _build_config(args)
    algorithms = (args.algorithm_a, args.algorithm_b)
    out = emit_diversity_trace(config, algorithms)
    print(f"diversity trace written to {out['trace']}")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        path = find_instance(args.instance)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    instance = parse_tsplib_file(path)
    d = build_cost_matrix(instance)
    if args.tour:
        tour = parse_opt_tour_file(args.tour)
    else:
        tour = load_optimal_tour(instance.name)
        if tour is None:
            print(
                f"error: no tour file given and none bundled for {instance.name}",
                file=sys.stderr,
            )
            return 1
    if len(tour) != instance.dimension:
        print(
            f"error: tour has {len(tour)} cities, instance has "
            f"{instance.dimension}",
            file=sys.stderr,
        )
        return 1
    try:
        length = tour_length(np.asarray(tour), d)
    except ValueError as exc:
        print(f"error: invalid tour: {exc}", file=sys.stderr)
        return 1
    print(f"{instance.name}: {instance.dimension} cities, tour length {length}")
    expected = args.expect
    if expected is None:
        expected = OPTIMAL_LENGTHS.get(instance.name)
    if expected is not None:
        if length == expected:
            print(f"matches expected optimum {expected}")
            return 0
        print(
            f"error: expected length {expected}, tour has {length}",
            file=sys.stderr,
        )
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cgoas",
        description="Benchmark harness for cooperative ant-system TSP solvers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="seeded replications of one algorithm")
    _add_config_flags(p_run)
    p_run.set_defaults(fn=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="replicate across a p_ind grid")
    _add_config_flags(p_sweep)
    p_sweep.add_argument("--grid", help="comma-separated p_ind values "
                                        "(default 0,0.2,0.4,0.6,0.8,1)")
    p_sweep.set_defaults(fn=_cmd_sweep)

    p_trace = sub.add_parser("trace", help="two algorithms' diversity traces")
    _add_config_flags(p_trace)
    p_trace.add_argument("--algorithm-a", default="CGO-AS_3opt", choices=ALGORITHMS)
    p_trace.add_argument("--algorithm-b", default="MMAS_3opt", choices=ALGORITHMS)
    p_trace.set_defaults(fn=_cmd_trace)

    p_val = sub.add_parser("validate", help="check an instance + tour file")
    p_val.add_argument("instance", help="bundled instance name or .tsp path")
    p_val.add_argument("tour", nargs="?", help=".tour file (default: bundled)")
    p_val.add_argument("--expect", type=int, help="expected tour length")
    p_val.set_defaults(fn=_cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ExperimentError, TsplibError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
