"""Batch experiment runner: seeded replications, sweeps, and CSV emission.

One :class:`ExperimentConfig` describes everything a batch needs —
instances, algorithm, group size, cycles, rule parameters, replication
count, and master seed — so a results directory is fully reproducible
from its config alone.  Per-run seeds are derived from (master seed,
instance index, run index); the written CSVs are byte-identical across
repeats of the same config because wall-clock time never enters the
trace files.

Output schemas (fixed column order, plain decimal points):

``summary.csv``
    instance, algorithm, runs, K, T, p_ind, f_star, best_length,
    best_ratio, mean_rpd_pct, sd_pct, mean_cpu_seconds
``trace_<instance>_<algorithm>_<run>.csv``
    t, f_gb, rpd_pct, diversity
``sweep.csv``
    summary columns plus a leading p_ind column; one aggregate row per
    grid value averages mean_rpd_pct across instances and names the
    instances it covers.
``diversity_trace_<instance>.csv``
    t, then rpd_pct/diversity column pairs for each algorithm (means
    across runs).
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace

import numpy as np

from ._rng import derive_seed
from .benchmarks import OPTIMAL_LENGTHS, find_instance
from .cgo import ALGORITHMS, run
from .construction import (
    DEFAULT_HALF_WIDTH,
    DEFAULT_P_IND,
    DEFAULT_SIGMA_C,
    MixedRuleParams,
)
from .landscape import SearchLandscape
from .metrics import rpd, summarize
from .pheromone import (
    DEFAULT_ALPHA,
    DEFAULT_BETA,
    DEFAULT_P_BEST,
    DEFAULT_TRAIL_PERSISTENCE,
    PheromoneParams,
)
from .tsplib import parse_tsplib_file

# batch defaults
DEFAULT_CYCLES = 500
DEFAULT_GROUP_SIZE = 10
DEFAULT_NEIGHBORS = 20
DEFAULT_RUNS = 10
DEFAULT_SEED = 1
DEFAULT_SWEEP_GRID = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)


class ExperimentError(RuntimeError):
    """Configuration or I/O problem that should abort the batch."""


@dataclass
class ExperimentConfig:
    """Everything one batch needs; field names double as config-file keys."""

    instances: tuple[str, ...] = ()
    algorithm: str = "CGO-AS_3opt"
    k: int = DEFAULT_GROUP_SIZE           # agents per group
    t: int = DEFAULT_CYCLES               # cycles per run
    p_ind: float = DEFAULT_P_IND
    sigma_c: float = DEFAULT_SIGMA_C
    w: float = DEFAULT_HALF_WIDTH
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    rho: float = DEFAULT_TRAIL_PERSISTENCE
    p_best: float = DEFAULT_P_BEST
    neighbors: int = DEFAULT_NEIGHBORS
    runs: int = DEFAULT_RUNS
    seed: int = DEFAULT_SEED
    out_dir: str = "results"
    f_star: dict[str, int] = field(default_factory=dict)
    jobs: int = 1                         # parallel runs (1 = serial)
    write_traces: bool = True

    def pheromone_params(self) -> PheromoneParams:
        return PheromoneParams(
            rho=self.rho, p_best=self.p_best, alpha=self.alpha, beta=self.beta
        )

    def mixed_params(self) -> MixedRuleParams:
        return MixedRuleParams(
            p_ind=self.p_ind, sigma_c=self.sigma_c, half_width=self.w
        )

    def validate(self) -> None:
        if not self.instances:
            raise ExperimentError("no instances given")
        if self.algorithm not in ALGORITHMS:
            raise ExperimentError(
                f"unknown algorithm {self.algorithm!r}; choose from {ALGORITHMS}"
            )
        if self.k < 1 or self.t < 1 or self.runs < 1 or self.neighbors < 1:
            raise ExperimentError("k, t, runs, and neighbors must be positive")
        if self.jobs < 1:
            raise ExperimentError("jobs must be positive")
        # parameter ranges are enforced by the parameter dataclasses
        self.pheromone_params()
        self.mixed_params()


def lookup_f_star(config: ExperimentConfig, instance_name: str) -> int:
    """Known optimum for an instance, from config overrides or the
    bundled table; raises ExperimentError when RPD would be undefined."""
    if instance_name in config.f_star:
        return int(config.f_star[instance_name])
    if instance_name in OPTIMAL_LENGTHS:
        return OPTIMAL_LENGTHS[instance_name]
    raise ExperimentError(
        f"no known optimal length for {instance_name!r}; "
        "pass one via f_star to enable RPD reporting"
    )


def _load_landscape(config: ExperimentConfig, spec: str) -> SearchLandscape:
    try:
        path = find_instance(spec)
    except FileNotFoundError as exc:
        raise ExperimentError(str(exc)) from exc
    instance = parse_tsplib_file(path)
    return SearchLandscape.from_instance(instance, k=config.neighbors)


def _execute_run(args):
    """One seeded run; top-level so process pools can pick it up."""
    config, spec, run_seed = args
    landscape = _load_landscape(config, spec)
    return run(
        landscape,
        config.algorithm,
        n_agents=config.k,
        n_cycles=config.t,
        seed=run_seed,
        pheromone_params=config.pheromone_params(),
        mixed_params=config.mixed_params(),
    )


def _run_batch(config: ExperimentConfig, spec: str, instance_index: int, salt: int = 0):
    """All replications for one instance; returns the RunResults in run order."""
    seeds = [
        derive_seed(config.seed, salt, instance_index, r) for r in range(config.runs)
    ]
    tasks = [(config, spec, s) for s in seeds]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(_execute_run, tasks))
    return [_execute_run(t) for t in tasks]


def _float(x: float) -> str:
    return f"{x:.6f}"


SUMMARY_COLUMNS = (
    "instance", "algorithm", "runs", "K", "T", "p_ind", "f_star",
    "best_length", "best_ratio", "mean_rpd_pct", "sd_pct", "mean_cpu_seconds",
)

TRACE_COLUMNS = ("t", "f_gb", "rpd_pct", "diversity")


def _summary_row(config: ExperimentConfig, name: str, results, f_star: int):
    lengths = [r.best.tour.length for r in results]
    cpu = [r.cpu_seconds for r in results]
    s = summarize(lengths, f_star, instance=name, algorithm=config.algorithm,
                  cpu_seconds=cpu)
    return [
        name, config.algorithm, str(s.runs), str(config.k), str(config.t),
        _float(config.p_ind), str(f_star), str(s.best_length),
        _float(s.best_ratio), _float(s.mean_rpd), _float(s.sd_pct),
        _float(s.mean_cpu_seconds),
    ]


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _instance_name(spec: str) -> str:
    base = os.path.basename(spec)
    return base[:-4] if base.endswith(".tsp") else base


def _write_trace(path: str, result, f_star: int) -> None:
    rows = [
        [
            str(int(t)), str(int(f_gb)),
            _float(rpd(int(f_gb), f_star)), _float(div),
        ]
        for t, f_gb, div in zip(
            result.trace.cycles, result.trace.best_length, result.trace.diversity
        )
    ]
    _write_csv(path, TRACE_COLUMNS, rows)


def run_experiment(config: ExperimentConfig) -> dict:
    """Execute the batch and write summary.csv (+ per-run traces).

    Returns {"summary": path, "traces": [paths], "results": {name: [RunResult]}}.
    """
    config.validate()
    os.makedirs(config.out_dir, exist_ok=True)
    summary_rows = []
    trace_paths = []
    all_results: dict[str, list] = {}
    for idx, spec in enumerate(config.instances):
        name = _instance_name(spec)
        f_star = lookup_f_star(config, name)
        results = _run_batch(config, spec, idx)
        all_results[name] = results
        summary_rows.append(_summary_row(config, name, results, f_star))
        if config.write_traces:
            for r_idx, result in enumerate(results):
                path = os.path.join(
                    config.out_dir,
                    f"trace_{name}_{config.algorithm}_{r_idx}.csv",
                )
                _write_trace(path, result, f_star)
                trace_paths.append(path)
    summary_path = os.path.join(config.out_dir, "summary.csv")
    _write_csv(summary_path, SUMMARY_COLUMNS, summary_rows)
    return {"summary": summary_path, "traces": trace_paths, "results": all_results}


SWEEP_COLUMNS = ("p_ind",) + SUMMARY_COLUMNS


def sweep_p_ind(config: ExperimentConfig, grid=DEFAULT_SWEEP_GRID) -> dict:
    """Replicate the batch at each p_ind in the grid and write sweep.csv.

    Emits one row per (grid value, instance) plus, per grid value, an
    aggregate row whose instance column names the instances averaged
    into its mean RPD.
    """
    config.validate()
    grid = tuple(float(g) for g in grid)
    if not grid:
        raise ExperimentError("empty p_ind grid")
    if any(not 0.0 <= g <= 1.0 for g in grid):
        raise ExperimentError("p_ind grid values must lie in [0, 1]")
    os.makedirs(config.out_dir, exist_ok=True)
    rows = []
    mean_rpds: dict[float, list[float]] = {g: [] for g in grid}
    for g_idx, g in enumerate(grid):
        variant = replace(config, p_ind=g)
        for idx, spec in enumerate(variant.instances):
            name = _instance_name(spec)
            f_star = lookup_f_star(variant, name)
            results = _run_batch(variant, spec, idx, salt=g_idx + 1)
            row = _summary_row(variant, name, results, f_star)
            rows.append([_float(g)] + row)
            lengths = [r.best.tour.length for r in results]
            mean_rpds[g].append(
                float(np.mean([rpd(v, f_star) for v in lengths]))
            )
        agg_name = "aggregate:" + "+".join(
            _instance_name(s) for s in variant.instances
        )
        rows.append(
            [_float(g), agg_name, config.algorithm, str(config.runs),
             str(config.k), str(config.t), _float(g), "", "", "",
             _float(float(np.mean(mean_rpds[g]))), "", ""]
        )
    sweep_path = os.path.join(config.out_dir, "sweep.csv")
    _write_csv(sweep_path, SWEEP_COLUMNS, rows)
    aggregate = {g: float(np.mean(v)) for g, v in mean_rpds.items()}
    return {"sweep": sweep_path, "aggregate_mean_rpd": aggregate}


def emit_diversity_trace(
    config: ExperimentConfig, algorithms: tuple[str, str] = ("CGO-AS_3opt", "MMAS_3opt")
) -> dict:
    """Run two algorithms under one config and write their per-cycle
    mean RPD and mean diversity side by side (one instance per file)."""
    config.validate()
    if len(config.instances) != 1:
        raise ExperimentError("diversity traces cover exactly one instance")
    for algo in algorithms:
        if algo not in ALGORITHMS:
            raise ExperimentError(f"unknown algorithm {algo!r}")
    os.makedirs(config.out_dir, exist_ok=True)
    spec = config.instances[0]
    name = _instance_name(spec)
    f_star = lookup_f_star(config, name)

    columns = ["t"]
    per_algo = {}
    for a_idx, algo in enumerate(algorithms):
        variant = replace(config, algorithm=algo)
        results = _run_batch(variant, spec, 0, salt=100 + a_idx)
        best = np.stack([r.trace.best_length for r in results])
        div = np.stack([r.trace.diversity for r in results])
        mean_rpd = np.array(
            [float(np.mean([rpd(v, f_star) for v in best[:, c]]))
             for c in range(best.shape[1])]
        )
        per_algo[algo] = (mean_rpd, div.mean(axis=0))
        columns += [f"rpd_pct_{algo}", f"diversity_{algo}"]

    rows = []
    for c in range(config.t):
        row = [str(c + 1)]
        for algo in algorithms:
            mean_rpd, mean_div = per_algo[algo]
            row += [_float(mean_rpd[c]), _float(mean_div[c])]
        rows.append(row)
    path = os.path.join(config.out_dir, f"diversity_trace_{name}.csv")
    _write_csv(path, columns, rows)
    return {"trace": path, "per_algorithm": per_algo}


# ---------------------------------------------------------------------------
# config files: flat "key = value" lines, # comments, field names as keys


def parse_config_text(text: str) -> dict:
    """Parse a key=value config file into a mapping of config fields."""
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ExperimentError(f"config line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONFIG_FIELD_TYPES:
            raise ExperimentError(f"config line {lineno}: unknown key {key!r}")
        out[key] = _convert_config_value(key, value, lineno)
    return out


_CONFIG_FIELD_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def _convert_config_value(key: str, value: str, lineno: int):
    try:
        if key == "instances":
            return tuple(v.strip() for v in value.split(",") if v.strip())
        if key == "f_star":
            mapping = {}
            for part in value.split(","):
                part = part.strip()
                if not part:
                    continue
                name, _, num = part.partition(":")
                mapping[name.strip()] = int(num)
            return mapping
        if key in ("k", "t", "neighbors", "runs", "seed", "jobs"):
            return int(value)
        if key in ("p_ind", "sigma_c", "w", "alpha", "beta", "rho", "p_best"):
            return float(value)
        if key == "write_traces":
            return value.lower() in ("1", "true", "yes", "on")
        return value
    except ValueError as exc:
        raise ExperimentError(
            f"config line {lineno}: bad value {value!r} for {key!r}"
        ) from exc


def load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise ExperimentError(f"cannot read config file {path}: {exc}") from exc
