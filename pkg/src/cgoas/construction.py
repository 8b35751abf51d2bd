"""Tour construction rules: purely social, and mixed parent/social.

The social rule is the classic ant step: from the current city, pick
the next one among the 20 nearest unvisited candidates with probability
proportional to tau^alpha * (1/d)^beta, falling back to all unvisited
cities when the candidates are exhausted.  The mixed rule first copies
a run of consecutive edges from the agent's own remembered tour — the
copied fraction fluctuates around p_ind — and only then falls back to
the social step, so one parameter blends individual memory into the
social construction.  Setting p_ind = 0 recovers the social rule
exactly, draw for draw; p_ind = 1 replays the parent tour.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._rng import RandomStream
from .landscape import SearchLandscape, Tour
from .local_search import three_opt_improve
from .pheromone import PheromoneMatrix, PheromoneParams

DEFAULT_P_IND = 0.8
DEFAULT_SIGMA_C = 0.1
DEFAULT_HALF_WIDTH = 0.1

# Heuristic stand-in for zero-cost edges (coincident cities): acts like a
# half-unit distance so such edges stay finite yet strongly preferred.
_ZERO_DISTANCE_ETA = 2.0


@dataclass
class MixedRuleParams:
    """Parameters of the mixed construction rule.

    p_ind is the expected fraction of the tour inherited from the
    parent; sigma_c and half_width shape the truncated-normal jitter
    around it.  The half-width is clipped per draw so the copied
    fraction always lands in [0, 1].
    """

    p_ind: float = DEFAULT_P_IND
    sigma_c: float = DEFAULT_SIGMA_C
    half_width: float = DEFAULT_HALF_WIDTH

    def __post_init__(self):
        if not 0.0 <= self.p_ind <= 1.0:
            raise ValueError(f"p_ind must be in [0, 1], got {self.p_ind}")
        if self.sigma_c < 0.0:
            raise ValueError("sigma_c must be non-negative")
        if self.half_width < 0.0:
            raise ValueError("half_width must be non-negative")


def heuristic_matrix(d: np.ndarray, beta: float) -> np.ndarray:
    """Precomputed (1/d)^beta table with a safe value for zero distances."""
    heur = np.empty(d.shape, dtype=np.float64)
    positive = d > 0
    heur[positive] = (1.0 / d[positive]) ** beta
    heur[~positive] = _ZERO_DISTANCE_ETA ** beta
    np.fill_diagonal(heur, 0.0)
    return heur


def sample_truncated_normal(sigma: float, bound: float, rng: RandomStream) -> float:
    """Zero-mean normal draw rejected into [-bound, bound].

    sigma = 0 or bound = 0 returns 0.0 without consuming randomness.
    """
    return float(_kernels.truncated_normal(rng.state, sigma, bound))


def clip_half_width(p_ind: float, half_width: float) -> float:
    """Effective truncation half-width for a given p_ind (kept in [0, 1])."""
    return float(_kernels.clip_half_width(p_ind, half_width))


def select_next_city(
    current: int,
    visited,
    psi: PheromoneMatrix,
    landscape: SearchLandscape,
    params: PheromoneParams,
    rng: RandomStream,
    heur: np.ndarray | None = None,
) -> int:
    """One probabilistic construction step (exposed mainly for testing)."""
    if heur is None:
        heur = heuristic_matrix(landscape.d, params.beta)
    visited_mask = np.zeros(landscape.n, dtype=np.bool_)
    for v in visited:
        visited_mask[v] = True
    visited_mask[current] = True
    k = landscape.neighbors.shape[1]
    wbuf = np.empty(k, dtype=np.float64)
    cbuf = np.empty(k, dtype=np.int32)
    return int(
        _kernels.pick_next_city(
            psi.tau, heur, landscape.neighbors, visited_mask,
            np.int32(current), params.alpha, rng.state, wbuf, cbuf,
        )
    )


def construct_social(
    psi: PheromoneMatrix,
    landscape: SearchLandscape,
    params: PheromoneParams,
    rng: RandomStream,
    heur: np.ndarray | None = None,
) -> Tour:
    """Build a tour from the shared trails alone (random start city)."""
    if heur is None:
        heur = heuristic_matrix(landscape.d, params.beta)
    perm = _kernels.construct_social(
        psi.tau, heur, landscape.neighbors, params.alpha, rng.state
    )
    return Tour(perm, int(_kernels.tour_length(perm, landscape.d)))


def construct_mixed(
    parent: Tour,
    psi: PheromoneMatrix,
    landscape: SearchLandscape,
    mixed: MixedRuleParams,
    params: PheromoneParams,
    rng: RandomStream,
    heur: np.ndarray | None = None,
) -> Tour:
    """Blend a run of parent edges with social completion (see module doc)."""
    if heur is None:
        heur = heuristic_matrix(landscape.d, params.beta)
    perm = _kernels.construct_mixed(
        parent.perm, psi.tau, heur, landscape.neighbors,
        params.alpha, mixed.p_ind, mixed.sigma_c, mixed.half_width, rng.state,
    )
    return Tour(perm, int(_kernels.tour_length(perm, landscape.d)))


def construct_social_3opt(
    psi: PheromoneMatrix,
    landscape: SearchLandscape,
    params: PheromoneParams,
    rng: RandomStream,
    heur: np.ndarray | None = None,
) -> Tour:
    """Social construction followed by 3-opt refinement (one macro step)."""
    return three_opt_improve(
        construct_social(psi, landscape, params, rng, heur), landscape
    )


def construct_mixed_3opt(
    parent: Tour,
    psi: PheromoneMatrix,
    landscape: SearchLandscape,
    mixed: MixedRuleParams,
    params: PheromoneParams,
    rng: RandomStream,
    heur: np.ndarray | None = None,
) -> Tour:
    """Mixed construction followed by 3-opt refinement (one macro step)."""
    return three_opt_improve(
        construct_mixed(parent, psi, landscape, mixed, params, rng, heur), landscape
    )
