"""Shared pheromone memory: evaporation, deposits, and adaptive trail limits.

The trail matrix is symmetric with an irrelevant diagonal.  After every
update the entries are clamped into [tau_min, tau_max], where the limits
are recomputed from the current best-so-far length, so early stagnation
is impossible no matter how the deposits concentrate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .landscape import Tour

DEFAULT_TRAIL_PERSISTENCE = 0.5
DEFAULT_P_BEST = 0.05
DEFAULT_ALPHA = 1.0
DEFAULT_BETA = 2.0


@dataclass
class PheromoneParams:
    """Knobs of the trail update rule.

    rho is the persistence factor: the fraction of each trail that
    survives one cycle (so 1 - rho evaporates).  p_best tunes the lower
    trail limit: it is the target probability of re-constructing the
    best tour once the matrix has fully converged.
    """

    rho: float = DEFAULT_TRAIL_PERSISTENCE
    p_best: float = DEFAULT_P_BEST
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA

    def __post_init__(self):
        if not 0.0 <= self.rho < 1.0:
            raise ValueError(f"rho must be in [0, 1), got {self.rho}")
        if not 0.0 < self.p_best <= 1.0:
            raise ValueError(f"p_best must be in (0, 1], got {self.p_best}")


def compute_tau_max(f_best: int | float, rho: float) -> float:
    """Upper trail limit 1 / ((1 - rho) * f_best)."""
    if f_best <= 0:
        raise ValueError("tour length must be positive")
    return 1.0 / ((1.0 - rho) * f_best)


def compute_tau_min(tau_max: float, p_best: float, n: int) -> float:
    """Lower trail limit derived from the converged-construction model.

    With probability p_best of rebuilding the best tour at convergence,
    the limit is tau_max * (p^(-1/N) - 1) / (N/2 - 1) with p = p_best.
    p_best = 1 gives 0, i.e. trails may evaporate freely.
    """
    if n < 3:
        raise ValueError("need at least 3 cities")
    if p_best >= 1.0:
        return 0.0
    avg = n / 2.0 - 1.0
    return tau_max * (p_best ** (-1.0 / n) - 1.0) / avg


@dataclass
class PheromoneMatrix:
    """The trail matrix plus its current clamp limits."""

    tau: np.ndarray
    tau_min: float
    tau_max: float

    @property
    def n(self) -> int:
        return self.tau.shape[0]


def init_pheromone(n: int, params: PheromoneParams, f_seed: int | float) -> PheromoneMatrix:
    """Fresh matrix with every trail at the initial upper limit.

    ``f_seed`` is the length of a cheap reference tour (a greedy
    nearest-neighbor tour); it anchors the limits before any real best
    tour exists.
    """
    tau_max = compute_tau_max(f_seed, params.rho)
    tau_min = compute_tau_min(tau_max, params.p_best, n)
    tau = np.full((n, n), tau_max, dtype=np.float64)
    return PheromoneMatrix(tau, tau_min, tau_max)


def _deposit(tau: np.ndarray, tour: Tour) -> None:
    amount = 1.0 / tour.length
    perm = tour.perm
    n = perm.shape[0]
    a = perm
    b = np.roll(perm, -1)
    tau[a, b] += amount
    tau[b, a] += amount


def update_pheromone(
    psi: PheromoneMatrix,
    deposit_tours: Sequence[Tour],
    params: PheromoneParams,
    f_best: int | float,
) -> PheromoneMatrix:
    """One trail update cycle, in place.

    Every trail decays by the persistence factor, each deposit tour adds
    1/length to both directions of its edges, and the limits are
    refreshed from the current best-so-far length before clamping.
    Returns ``psi`` for convenience.
    """
    tau = psi.tau
    tau *= params.rho
    for tour in deposit_tours:
        _deposit(tau, tour)
    psi.tau_max = compute_tau_max(f_best, params.rho)
    psi.tau_min = compute_tau_min(psi.tau_max, params.p_best, psi.n)
    np.clip(tau, psi.tau_min, psi.tau_max, out=tau)
    return psi


@dataclass(frozen=True)
class DepositSchedule:
    """Which tour deposits at cycle t: iteration-best vs best-so-far.

    The run is split into phases by ``boundaries``; during phase p the
    best-so-far tour deposits whenever t is a multiple of
    ``intervals[p]``, otherwise the iteration-best does.  The default
    schedule starts almost always iteration-best and shifts toward
    best-so-far every cycle late in the run.
    """

    boundaries: tuple[int, ...] = (25, 75, 125, 250)
    intervals: tuple[int, ...] = (25, 5, 3, 2, 1)

    def __post_init__(self):
        if len(self.intervals) != len(self.boundaries) + 1:
            raise ValueError("need exactly one interval per phase")
        if any(b <= 0 for b in self.boundaries) or any(
            i <= 0 for i in self.intervals
        ):
            raise ValueError("boundaries and intervals must be positive")
        if list(self.boundaries) != sorted(set(self.boundaries)):
            raise ValueError("boundaries must be strictly increasing")

    def gb_interval(self, t: int) -> int:
        """Deposit interval of the best-so-far tour during cycle t."""
        if t < 1:
            raise ValueError("cycles are counted from 1")
        for boundary, interval in zip(self.boundaries, self.intervals):
            if t <= boundary:
                return interval
        return self.intervals[-1]

    def uses_best_so_far(self, t: int) -> bool:
        return t % self.gb_interval(t) == 0


def select_deposit_tour(
    schedule: DepositSchedule,
    t: int,
    iteration_best: Tour,
    best_so_far: Tour,
) -> Tour:
    """The single tour allowed to deposit at cycle t."""
    if schedule.uses_best_so_far(t):
        return best_so_far
    return iteration_best
