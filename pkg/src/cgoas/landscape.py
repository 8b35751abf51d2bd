"""The search landscape: tours, their evaluation, and global-best tracking.

A state is a Hamiltonian cycle over N cities, represented as a
permutation array; its quality is the integer tour length under the
instance's cost matrix, and comparison is strict minimization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .tsplib import TspInstance, build_cost_matrix, build_neighbor_lists

BRUTE_FORCE_LIMIT = 11


def tour_length(perm, d: np.ndarray) -> int:
    """Closed-tour length of ``perm`` under cost matrix ``d``.

    Validates that ``perm`` is a permutation of 0..N-1; raises
    ValueError otherwise.
    """
    perm = np.asarray(perm)
    n = d.shape[0]
    if perm.shape != (n,):
        raise ValueError(f"tour has {perm.shape} cities, expected ({n},)")
    counts = np.bincount(perm, minlength=n)
    if perm.min(initial=0) < 0 or counts.max(initial=0) > 1 or counts.min() < 1:
        raise ValueError("tour is not a permutation of 0..N-1")
    return int(_kernels.tour_length(perm.astype(np.int32), d))


@dataclass
class Tour:
    """A tour plus its cached length.  Treated as immutable by the solver."""

    perm: np.ndarray
    length: int

    @classmethod
    def from_perm(cls, perm, d: np.ndarray) -> "Tour":
        perm = np.ascontiguousarray(perm, dtype=np.int32)
        return cls(perm, tour_length(perm, d))

    def copy(self) -> "Tour":
        return Tour(self.perm.copy(), self.length)


def quality_better(a: int | float, b: int | float) -> bool:
    """Strict minimization: True iff quality a beats quality b."""
    return a < b


@dataclass
class BestSoFar:
    """The facilitator's record of the best state seen in a run."""

    tour: Tour | None = None
    found_at_cycle: int = -1

    @property
    def length(self) -> int | None:
        return None if self.tour is None else self.tour.length


def update_best_so_far(best: BestSoFar, candidate: Tour, cycle: int) -> BestSoFar:
    """Fold a candidate into the best-so-far record (strict improvement only)."""
    if best.tour is None or quality_better(candidate.length, best.tour.length):
        return BestSoFar(candidate.copy(), cycle)
    return best


def random_tour(d: np.ndarray, rng) -> Tour:
    """Uniformly random tour drawn from ``rng`` (a RandomStream)."""
    perm = rng.permutation(d.shape[0]).astype(np.int32)
    return Tour(perm, int(_kernels.tour_length(perm, d)))


def nearest_neighbor_tour(d: np.ndarray, start: int = 0) -> Tour:
    """Greedy nearest-neighbor tour from ``start`` (ties to lower index)."""
    perm = _kernels.nearest_neighbor_tour(d, start)
    return Tour(perm, int(_kernels.tour_length(perm, d)))


def brute_force_optimal(d: np.ndarray) -> Tour:
    """Exact optimum by exhaustive search; only for N <= 11.

    Fixes city 0 first and skips reversed duplicates, so (N-1)!/2 tours
    are evaluated.  Ties resolve to the lexicographically first
    permutation visited, which makes the result deterministic.
    """
    n = d.shape[0]
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"exhaustive search is limited to N <= {BRUTE_FORCE_LIMIT}, got {n}"
        )
    if n < 3:
        raise ValueError("need at least 3 cities")
    best_perm = None
    best_len = None
    for rest in itertools.permutations(range(1, n)):
        if rest[0] > rest[-1]:  # each cycle once, not once per direction
            continue
        perm = np.array((0,) + rest, dtype=np.int32)
        length = int(_kernels.tour_length(perm, d))
        if best_len is None or length < best_len:
            best_len = length
            best_perm = perm
    return Tour(best_perm, best_len)


@dataclass
class SearchLandscape:
    """Problem data shared by every agent: costs plus candidate lists."""

    d: np.ndarray
    neighbors: np.ndarray
    name: str = ""

    @property
    def n(self) -> int:
        return self.d.shape[0]

    @classmethod
    def from_instance(cls, instance: TspInstance, k: int = 20) -> "SearchLandscape":
        d = build_cost_matrix(instance)
        return cls(d, build_neighbor_lists(d, k), instance.name)

    @classmethod
    def from_matrix(cls, d: np.ndarray, k: int = 20, name: str = "") -> "SearchLandscape":
        d = np.asarray(d, dtype=np.int64)
        return cls(d, build_neighbor_lists(d, k), name)
