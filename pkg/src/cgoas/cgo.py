"""The cooperative-search engine: agents, shared memory, and the cycle loop.

A group of K agents searches the landscape together.  Each agent keeps
a private memory (its own remembered tour) and can read the shared
social memory (the pheromone matrix).  Every cycle each agent generates
one candidate tour, submits it both to its own update buffer and to the
group's collection buffer, private memories keep the better of old vs
new, and the social memory absorbs the collected tours through the
trail update.  A passive facilitator tracks the best tour seen so far.

What each agent reads while generating, and how memories absorb the
submissions, is configuration, not code: the memory protocol is a table
of rows (memory, chunk, init rule, update rule, source chunk), the
generation step is a named rule over declared inputs, and all rules are
looked up in registries by name.  Adding a strategy means adding a
table entry, after which :func:`validate_protocol` still guarantees
that every long-term chunk remains reachable from freshly generated
data — a configuration whose memories can silently go stale is
rejected before the run starts.

Four stock configurations are provided: ``MMAS`` (social generation
only), ``CGO-AS`` (mixed individual/social generation), and their
3-opt-refined variants ``MMAS_3opt`` / ``CGO-AS_3opt``.  They share one
protocol table; the purely social configurations simply never read the
private tour, which stays inert but well-defined.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._rng import RandomStream
from .construction import (
    MixedRuleParams,
    construct_mixed,
    construct_mixed_3opt,
    construct_social,
    construct_social_3opt,
    heuristic_matrix,
)
from .landscape import (
    BestSoFar,
    SearchLandscape,
    Tour,
    nearest_neighbor_tour,
    quality_better,
    random_tour,
    update_best_so_far,
)
from .metrics import RunTrace, population_diversity
from .pheromone import (
    DepositSchedule,
    PheromoneMatrix,
    PheromoneParams,
    init_pheromone,
    select_deposit_tour,
    update_pheromone,
)


class ConfigurationError(ValueError):
    """Raised when a protocol/generation configuration is inconsistent."""


# ---------------------------------------------------------------------------
# configuration tables


@dataclass(frozen=True)
class ProtocolRow:
    """One memory chunk: where it lives, how it starts, how it absorbs."""

    memory: str        # "agent" (private, one per agent) or "social" (shared)
    chunk: str         # chunk name within that memory
    init_rule: str     # rule that creates the chunk before cycle 1
    update_rule: str   # rule that folds submitted data into the chunk
    source: str        # chunk name the update consumes

    def __post_init__(self):
        if self.memory not in ("agent", "social"):
            raise ConfigurationError(
                f"unknown memory kind {self.memory!r} for chunk {self.chunk!r}"
            )


@dataclass(frozen=True)
class EshSpec:
    """An external search heuristic: the generation rule and its wiring."""

    generate_rule: str        # name in GENERATE_RULES
    inputs: tuple[str, ...]   # chunks the rule reads
    output: str = "generated_tour"


GENERATED_CHUNK = "generated_tour"
PERSONAL_CHUNK = "personal_tour"
PHEROMONE_CHUNK = "pheromone"

DEFAULT_PROTOCOL: tuple[ProtocolRow, ...] = (
    ProtocolRow(
        memory="agent",
        chunk=PERSONAL_CHUNK,
        init_rule="random_tour",
        update_rule="keep_better",
        source=GENERATED_CHUNK,
    ),
    ProtocolRow(
        memory="social",
        chunk=PHEROMONE_CHUNK,
        init_rule="pheromone_max_init",
        update_rule="pheromone_deposit",
        source=GENERATED_CHUNK,
    ),
)

ESH_TABLE: dict[str, EshSpec] = {
    "MMAS": EshSpec("social_tour", (PHEROMONE_CHUNK,)),
    "MMAS_3opt": EshSpec("social_tour_3opt", (PHEROMONE_CHUNK,)),
    "CGO-AS": EshSpec("mixed_tour", (PERSONAL_CHUNK, PHEROMONE_CHUNK)),
    "CGO-AS_3opt": EshSpec("mixed_tour_3opt", (PERSONAL_CHUNK, PHEROMONE_CHUNK)),
}

ALGORITHMS: tuple[str, ...] = tuple(ESH_TABLE)


# ---------------------------------------------------------------------------
# run-time state


@dataclass
class RunContext:
    """Everything a generation rule may read (besides agent state)."""

    landscape: SearchLandscape
    psi: PheromoneMatrix
    heur: np.ndarray
    pheromone_params: PheromoneParams
    mixed_params: MixedRuleParams


@dataclass
class AgentState:
    """One agent: private memory, generative buffer, update buffer, stream."""

    index: int
    rng: RandomStream
    m_a: dict = field(default_factory=dict)
    m_g: dict = field(default_factory=dict)
    m_ba: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# rule registries (name -> implementation); configurations reference these


def _gen_social(ctx: RunContext, agent: AgentState) -> Tour:
    return construct_social(
        ctx.psi, ctx.landscape, ctx.pheromone_params, agent.rng, ctx.heur
    )


def _gen_social_3opt(ctx: RunContext, agent: AgentState) -> Tour:
    return construct_social_3opt(
        ctx.psi, ctx.landscape, ctx.pheromone_params, agent.rng, ctx.heur
    )


def _gen_mixed(ctx: RunContext, agent: AgentState) -> Tour:
    return construct_mixed(
        agent.m_a[PERSONAL_CHUNK], ctx.psi, ctx.landscape,
        ctx.mixed_params, ctx.pheromone_params, agent.rng, ctx.heur,
    )


def _gen_mixed_3opt(ctx: RunContext, agent: AgentState) -> Tour:
    return construct_mixed_3opt(
        agent.m_a[PERSONAL_CHUNK], ctx.psi, ctx.landscape,
        ctx.mixed_params, ctx.pheromone_params, agent.rng, ctx.heur,
    )


GENERATE_RULES: dict[str, Callable[[RunContext, AgentState], Tour]] = {
    "social_tour": _gen_social,
    "social_tour_3opt": _gen_social_3opt,
    "mixed_tour": _gen_mixed,
    "mixed_tour_3opt": _gen_mixed_3opt,
}

# rules that may read the private tour (needed by protocol validation)
_RULES_READING_PERSONAL = {"mixed_tour", "mixed_tour_3opt"}

TOUR_INIT_RULES: dict[str, Callable[[SearchLandscape, RandomStream], Tour]] = {
    "random_tour": lambda landscape, rng: random_tour(landscape.d, rng),
}

TOUR_UPDATE_RULES: dict[str, Callable[[Tour, Tour], Tour]] = {
    # replace iff strictly better; ties keep the incumbent
    "keep_better": lambda old, new: new if quality_better(new.length, old.length) else old,
}

SOCIAL_INIT_RULES: tuple[str, ...] = ("pheromone_max_init",)
SOCIAL_UPDATE_RULES: tuple[str, ...] = ("pheromone_deposit",)


# ---------------------------------------------------------------------------
# configuration validation


def validate_protocol(
    rows: Sequence[ProtocolRow], esh: EshSpec
) -> None:
    """Reject configurations whose memories cannot stay fresh.

    Checks that every referenced rule exists, that the generation rule's
    inputs are declared chunks, and that every long-term chunk is
    reachable from the generation output through the update arcs —
    i.e. new data can actually flow into each memory.
    """
    if esh.generate_rule not in GENERATE_RULES:
        raise ConfigurationError(f"unknown generation rule {esh.generate_rule!r}")

    chunks = {row.chunk for row in rows}
    if len(chunks) != len(list(rows)):
        raise ConfigurationError("duplicate chunk names in protocol")

    for name in esh.inputs:
        if name not in chunks:
            raise ConfigurationError(
                f"generation rule reads undeclared chunk {name!r}"
            )

    for row in rows:
        if row.memory == "agent":
            if row.init_rule not in TOUR_INIT_RULES:
                raise ConfigurationError(
                    f"unknown init rule {row.init_rule!r} for chunk {row.chunk!r}"
                )
            if row.update_rule not in TOUR_UPDATE_RULES:
                raise ConfigurationError(
                    f"unknown update rule {row.update_rule!r} for chunk {row.chunk!r}"
                )
        else:
            if row.init_rule not in SOCIAL_INIT_RULES:
                raise ConfigurationError(
                    f"unknown init rule {row.init_rule!r} for chunk {row.chunk!r}"
                )
            if row.update_rule not in SOCIAL_UPDATE_RULES:
                raise ConfigurationError(
                    f"unknown update rule {row.update_rule!r} for chunk {row.chunk!r}"
                )

    # updatability: walk update arcs (source chunk -> stored chunk) from
    # the generation output; every long-term chunk must be reached
    reachable = {esh.output}
    changed = True
    while changed:
        changed = False
        for row in rows:
            if row.chunk not in reachable and row.source in reachable:
                reachable.add(row.chunk)
                changed = True
    stale = [row.chunk for row in rows if row.chunk not in reachable]
    if stale:
        raise ConfigurationError(
            f"chunk(s) {stale} can never receive generated data; "
            "every memory must be updatable from the generation output"
        )


def resolve_algorithm(algorithm: str | EshSpec) -> EshSpec:
    if isinstance(algorithm, EshSpec):
        return algorithm
    try:
        return ESH_TABLE[algorithm]
    except KeyError:
        raise ConfigurationError(
            f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}"
        ) from None


# ---------------------------------------------------------------------------
# behaviors


def b_ini(
    landscape: SearchLandscape,
    protocol: Sequence[ProtocolRow],
    n_agents: int,
    seed: int,
    params: PheromoneParams,
) -> tuple[list[AgentState], dict]:
    """Create agents and initialize every memory chunk from its init rule.

    Agent i draws from stream i+1 of the master seed; stream 0 is
    reserved and stream n_agents+1 belongs to the interactive center.
    """
    agents = [
        AgentState(index=i, rng=RandomStream(seed, i + 1)) for i in range(n_agents)
    ]
    social: dict = {}
    for row in protocol:
        if row.memory == "agent":
            rule = TOUR_INIT_RULES[row.init_rule]
            for agent in agents:
                agent.m_a[row.chunk] = rule(landscape, agent.rng)
        elif row.init_rule == "pheromone_max_init":
            f_seed = nearest_neighbor_tour(landscape.d, 0).length
            social[row.chunk] = init_pheromone(landscape.n, params, f_seed)
    return agents, social


def b_gen(ctx: RunContext, agent: AgentState, esh: EshSpec) -> Tour:
    """Generate one candidate tour into the agent's generative buffer."""
    tour = GENERATE_RULES[esh.generate_rule](ctx, agent)
    agent.m_g[esh.output] = tour
    return tour


def b_sub(
    agent: AgentState,
    esh: EshSpec,
    collection_buffer: list[tuple[int, Tour]],
) -> None:
    """Submit the generated chunk to the agent's own update buffer and
    to the group's collection buffer (tagged with the agent index)."""
    tour = agent.m_g[esh.output]
    agent.m_ba[esh.output] = tour
    collection_buffer.append((agent.index, tour))


def b_ua(agent: AgentState, protocol: Sequence[ProtocolRow]) -> None:
    """Fold the agent's update buffer into its private memory."""
    for row in protocol:
        if row.memory != "agent":
            continue
        incoming = agent.m_ba.get(row.source)
        if incoming is None:
            continue
        rule = TOUR_UPDATE_RULES[row.update_rule]
        agent.m_a[row.chunk] = rule(agent.m_a[row.chunk], incoming)


def iteration_best(entries: Sequence[tuple[int, Tour]]) -> Tour:
    """Best submitted tour; ties go to the lowest agent index."""
    if not entries:
        raise ValueError("collection buffer is empty")
    best_idx, best_tour = None, None
    for idx, tour in entries:
        if (
            best_tour is None
            or quality_better(tour.length, best_tour.length)
            or (tour.length == best_tour.length and idx < best_idx)
        ):
            best_idx, best_tour = idx, tour
    return best_tour


def b_us(
    social: dict,
    protocol: Sequence[ProtocolRow],
    collection_buffer: list[tuple[int, Tour]],
    params: PheromoneParams,
    schedule: DepositSchedule,
    t: int,
    best: BestSoFar,
    deposit_all: bool = False,
) -> None:
    """Fold the collection buffer into the social memory.

    The outcome does not depend on submission order: the deposit tour is
    chosen by (length, agent index), and in deposit-all mode the tours
    are deposited in agent-index order.
    """
    entries = sorted(collection_buffer, key=lambda e: e[0])
    for row in protocol:
        if row.memory != "social" or row.update_rule != "pheromone_deposit":
            continue
        psi = social[row.chunk]
        if deposit_all:
            deposits = [tour for _, tour in entries]
        else:
            ib = iteration_best(entries)
            deposits = [select_deposit_tour(schedule, t, ib, best.tour)]
        update_pheromone(psi, deposits, params, best.tour.length)


# ---------------------------------------------------------------------------
# the run loop


@dataclass
class RunResult:
    """Outcome of one run: the best tour found plus per-cycle telemetry."""

    algorithm: str
    seed: int
    n_agents: int
    n_cycles: int
    best: BestSoFar
    trace: RunTrace
    cpu_seconds: float
    generated_lengths: list[np.ndarray] | None = None


def run(
    landscape: SearchLandscape,
    algorithm: str | EshSpec = "CGO-AS_3opt",
    *,
    n_agents: int = 10,
    n_cycles: int = 500,
    seed: int = 0,
    pheromone_params: PheromoneParams | None = None,
    mixed_params: MixedRuleParams | None = None,
    schedule: DepositSchedule | None = None,
    protocol: Sequence[ProtocolRow] = DEFAULT_PROTOCOL,
    deposit_all: bool = False,
    best_update_within_cycle: bool = True,
    record_generated: bool = False,
) -> RunResult:
    """Run one cooperative search and return its best tour and trace.

    Deterministic: a fixed (landscape, algorithm, parameters, seed)
    reproduces the identical tour sequence and trace.  Set
    ``deposit_all`` to let every submitted tour deposit (the classic
    all-ants rule) instead of the scheduled single deposit;
    ``best_update_within_cycle`` controls whether the facilitator
    refreshes the best-so-far record as submissions arrive (so the
    deposit schedule can already see this cycle's improvement) or only
    after the full cycle.
    """
    esh = resolve_algorithm(algorithm)
    validate_protocol(protocol, esh)
    if n_agents < 1:
        raise ValueError("need at least one agent")
    if n_cycles < 0:
        raise ValueError("cycle count must be non-negative")

    params = pheromone_params or PheromoneParams()
    mixed = mixed_params or MixedRuleParams()
    sched = schedule or DepositSchedule()
    algorithm_name = algorithm if isinstance(algorithm, str) else esh.generate_rule

    cpu_start = time.process_time()
    wall_start = time.perf_counter()

    agents, social = b_ini(landscape, protocol, n_agents, seed, params)
    psi = social[PHEROMONE_CHUNK]
    heur = heuristic_matrix(landscape.d, params.beta)
    ctx = RunContext(landscape, psi, heur, params, mixed)

    best = BestSoFar()
    cycles = np.arange(1, n_cycles + 1, dtype=np.int64)
    best_trace = np.zeros(n_cycles, dtype=np.int64)
    diversity_trace = np.zeros(n_cycles, dtype=np.float64)
    wall_trace = np.zeros(n_cycles, dtype=np.float64)
    generated_log: list[np.ndarray] | None = [] if record_generated else None

    for t in range(1, n_cycles + 1):
        collection: list[tuple[int, Tour]] = []
        generated: list[Tour] = []
        for agent in agents:
            tour = b_gen(ctx, agent, esh)
            b_sub(agent, esh, collection)
            if best_update_within_cycle:
                best = update_best_so_far(best, tour, t)
            generated.append(tour)
        if not best_update_within_cycle:
            for tour in generated:
                best = update_best_so_far(best, tour, t)
        for agent in agents:
            b_ua(agent, protocol)
        b_us(social, protocol, collection, params, sched, t, best, deposit_all)
        for agent in agents:
            agent.m_g.clear()
            agent.m_ba.clear()

        best_trace[t - 1] = best.tour.length
        diversity_trace[t - 1] = population_diversity([g.perm for g in generated])
        wall_trace[t - 1] = time.perf_counter() - wall_start
        if record_generated:
            generated_log.append(
                np.array([g.length for g in generated], dtype=np.int64)
            )

    trace = RunTrace(cycles, best_trace, diversity_trace, wall_trace)
    return RunResult(
        algorithm=algorithm_name,
        seed=seed,
        n_agents=n_agents,
        n_cycles=n_cycles,
        best=best,
        trace=trace,
        cpu_seconds=time.process_time() - cpu_start,
        generated_lengths=generated_log,
    )
