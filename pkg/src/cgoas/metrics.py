"""Solution-quality and population-diversity measurements.

Quality is reported relative to the known optimal length f*: RPD is the
percent excess, SD% the standard deviation of final lengths as a
percent of f*.  Diversity is measured structurally, by the number of
edges two tours do not share, averaged over all pairs and normalized by
the instance size so values are comparable across instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


def rpd(length: int | float, f_star: int | float) -> float:
    """Relative percent deviation: 100 * (f - f*) / f*."""
    if f_star <= 0:
        raise ValueError("f_star must be positive")
    return 100.0 * (length - f_star) / f_star


def sd_percent(lengths: Sequence[int | float], f_star: int | float, sample: bool = False) -> float:
    """Standard deviation of final lengths as a percent of f*.

    Population form (ddof=0) by default; pass sample=True for ddof=1.
    """
    if f_star <= 0:
        raise ValueError("f_star must be positive")
    arr = np.asarray(lengths, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("need at least one length")
    ddof = 1 if sample else 0
    if sample and arr.size < 2:
        raise ValueError("sample standard deviation needs at least two lengths")
    return 100.0 * float(arr.std(ddof=ddof)) / f_star


def _edge_key_set(perm: np.ndarray) -> np.ndarray:
    """Undirected edges of a tour, encoded as sorted unique int64 keys."""
    perm = np.asarray(perm, dtype=np.int64)
    n = perm.shape[0]
    a = perm
    b = np.roll(perm, -1)
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    return np.sort(lo * n + hi)


def tour_distance(a, b) -> int:
    """Number of edges of tour ``a`` not present in tour ``b``.

    Tours are undirected cycles, so rotations and reversals are
    distance 0.  The measure is symmetric and ranges 0..N.
    """
    perm_a = np.asarray(a, dtype=np.int64)
    perm_b = np.asarray(b, dtype=np.int64)
    if perm_a.shape != perm_b.shape:
        raise ValueError("tours must have the same length")
    ea = _edge_key_set(perm_a)
    eb = _edge_key_set(perm_b)
    shared = np.intersect1d(ea, eb, assume_unique=True).size
    return int(perm_a.shape[0] - shared)


def population_diversity(perms: Sequence[np.ndarray]) -> float:
    """Mean pairwise tour distance over a population, scaled by 1/N.

    0 means every tour uses identical edges; values near 1 mean tours
    share almost nothing.  A population of one has no pairs and reports
    0.0.  Implemented by counting edge multiplicities across the
    population, which gives the exact pairwise mean in O(K * N log N).
    """
    k = len(perms)
    if k == 0:
        raise ValueError("need at least one tour")
    n = len(perms[0])
    if k == 1:
        return 0.0
    keys = np.concatenate([_edge_key_set(p) for p in perms])
    _, counts = np.unique(keys, return_counts=True)
    # sum over pairs of |edges(a) & edges(b)| equals sum_e C(m_e, 2)
    shared_pairs = float((counts * (counts - 1) // 2).sum())
    pair_count = k * (k - 1) / 2.0
    mean_shared = shared_pairs / pair_count
    return (n - mean_shared) / n


@dataclass
class RunTrace:
    """Per-cycle telemetry of one run."""

    cycles: np.ndarray          # 1..T
    best_length: np.ndarray     # best-so-far after each cycle
    diversity: np.ndarray       # diversity of the tours generated that cycle
    wall_time: np.ndarray       # cumulative seconds (excluded from comparisons)


@dataclass
class RunSummary:
    """Aggregate statistics over repeated runs on one instance."""

    instance: str
    algorithm: str
    f_star: int
    runs: int
    best_length: int
    best_ratio: float           # fraction of runs whose final length hit f*
    mean_rpd: float
    sd_pct: float
    mean_cpu_seconds: float


def summarize(
    final_lengths: Sequence[int],
    f_star: int,
    instance: str = "",
    algorithm: str = "",
    cpu_seconds: Sequence[float] | None = None,
    sample: bool = False,
) -> RunSummary:
    """Fold the final lengths of repeated runs into a RunSummary."""
    arr = np.asarray(final_lengths, dtype=np.int64)
    if arr.size == 0:
        raise ValueError("need at least one run")
    best = int(arr.min())
    mean_cpu = float(np.mean(cpu_seconds)) if cpu_seconds else 0.0
    return RunSummary(
        instance=instance,
        algorithm=algorithm,
        f_star=int(f_star),
        runs=int(arr.size),
        best_length=best,
        best_ratio=float(np.mean(arr == int(f_star))),
        mean_rpd=float(np.mean([rpd(v, f_star) for v in arr])),
        sd_pct=sd_percent(arr, f_star, sample=sample),
        mean_cpu_seconds=mean_cpu,
    )
