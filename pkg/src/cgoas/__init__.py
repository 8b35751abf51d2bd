"""Cooperative ant-system solvers for the symmetric TSP.

A group of agents blends individual route memory with shared pheromone
trails (the mix set by one parameter, p_ind), optionally refined by
3-opt local search.  The package bundles verified benchmark instances
and a CLI harness (``cgoas``) for seeded, reproducible experiments.
"""

from ._rng import RandomStream, derive_seed
from .benchmarks import (
    BUNDLED_INSTANCES,
    OPTIMAL_LENGTHS,
    load_instance,
    load_optimal_tour,
    optimal_length,
)
from .cgo import (
    ALGORITHMS,
    DEFAULT_PROTOCOL,
    ESH_TABLE,
    ConfigurationError,
    EshSpec,
    ProtocolRow,
    RunResult,
    run,
    validate_protocol,
)
from .construction import (
    MixedRuleParams,
    construct_mixed,
    construct_mixed_3opt,
    construct_social,
    construct_social_3opt,
    heuristic_matrix,
    sample_truncated_normal,
    select_next_city,
)
from .experiments import (
    ExperimentConfig,
    ExperimentError,
    emit_diversity_trace,
    run_experiment,
    sweep_p_ind,
)
from .landscape import (
    BestSoFar,
    SearchLandscape,
    Tour,
    brute_force_optimal,
    nearest_neighbor_tour,
    quality_better,
    random_tour,
    tour_length,
    update_best_so_far,
)
from .local_search import apply_segment_reversal, three_opt_improve
from .metrics import (
    RunSummary,
    RunTrace,
    population_diversity,
    rpd,
    sd_percent,
    summarize,
    tour_distance,
)
from .pheromone import (
    DepositSchedule,
    PheromoneMatrix,
    PheromoneParams,
    compute_tau_max,
    compute_tau_min,
    init_pheromone,
    select_deposit_tour,
    update_pheromone,
)
from .tsplib import (
    TspInstance,
    TsplibError,
    build_cost_matrix,
    build_neighbor_lists,
    edge_weight,
    parse_opt_tour,
    parse_tsplib,
    parse_tsplib_file,
)

__version__ = "0.1.0"
