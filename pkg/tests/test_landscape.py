"""Tour evaluation, best-so-far tracking, and the exhaustive oracle."""

import numpy as np
import pytest

from cgoas import (
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
from cgoas._rng import RandomStream


# ---------------------------------------------------------------------------
# tour_length


def test_three_city_cycle_length(collinear_d):
    # only one undirected cycle exists on three cities: 3 + 4 + 7
    for perm in ([0, 1, 2], [1, 2, 0], [2, 1, 0]):
        assert tour_length(np.array(perm), collinear_d) == 14


def test_length_invariant_under_rotation_and_reversal(make_landscape):
    landscape = make_landscape(25, seed=1)
    rng = np.random.default_rng(2)
    for _ in range(20):
        perm = rng.permutation(25)
        reference = tour_length(perm, landscape.d)
        shift = int(rng.integers(25))
        assert tour_length(np.roll(perm, shift), landscape.d) == reference
        assert tour_length(perm[::-1].copy(), landscape.d) == reference


def test_length_rejects_non_permutations(collinear_d):
    with pytest.raises(ValueError):
        tour_length(np.array([0, 1]), collinear_d)
    with pytest.raises(ValueError):
        tour_length(np.array([0, 1, 1]), collinear_d)
    with pytest.raises(ValueError):
        tour_length(np.array([0, 1, 3]), collinear_d)


def test_length_agrees_with_direct_sum(make_landscape):
    landscape = make_landscape(30, seed=3)
    rng = np.random.default_rng(4)
    for _ in range(10):
        perm = rng.permutation(30)
        direct = sum(
            int(landscape.d[perm[i], perm[(i + 1) % 30]]) for i in range(30)
        )
        assert tour_length(perm, landscape.d) == direct


# ---------------------------------------------------------------------------
# comparison and best-so-far


def test_quality_comparison_is_strict():
    assert quality_better(10, 11)
    assert not quality_better(10, 10)
    assert not quality_better(11, 10)


def test_best_so_far_updates_only_on_strict_improvement(collinear_d):
    tour_a = Tour.from_perm([0, 1, 2], collinear_d)     # length 14
    best = update_best_so_far(BestSoFar(), tour_a, cycle=1)
    assert best.length == 14 and best.found_at_cycle == 1

    same = update_best_so_far(best, tour_a.copy(), cycle=5)
    assert same is best  # equal length: record untouched

    shorter = Tour(np.array([0, 1, 2], dtype=np.int32), 13)
    improved = update_best_so_far(best, shorter, cycle=7)
    assert improved.length == 13 and improved.found_at_cycle == 7


def test_best_so_far_equals_running_minimum(make_landscape):
    landscape = make_landscape(15, seed=5)
    rng = RandomStream(99, 0)
    best = BestSoFar()
    seen = []
    for cycle in range(1, 60):
        candidate = random_tour(landscape.d, rng)
        seen.append(candidate.length)
        best = update_best_so_far(best, candidate, cycle)
        assert best.length == min(seen)


# ---------------------------------------------------------------------------
# constructive helpers


def test_random_tour_is_permutation(make_landscape):
    landscape = make_landscape(20, seed=6)
    rng = RandomStream(1, 0)
    for _ in range(20):
        tour = random_tour(landscape.d, rng)
        assert sorted(tour.perm.tolist()) == list(range(20))
        assert tour.length == tour_length(tour.perm, landscape.d)


def test_nearest_neighbor_tour_greedy_steps():
    # from city 0 the greedy path is forced: 0 -> 1 -> 2 (then home)
    d = np.array([[0, 3, 7], [3, 0, 4], [7, 4, 0]], dtype=np.int64)
    tour = nearest_neighbor_tour(d, start=0)
    assert tour.perm.tolist() == [0, 1, 2]
    assert tour.length == 14


def test_nearest_neighbor_beats_random_on_average(make_landscape):
    landscape = make_landscape(60, seed=7)
    rng = RandomStream(2, 0)
    random_lengths = [random_tour(landscape.d, rng).length for _ in range(30)]
    assert nearest_neighbor_tour(landscape.d).length < min(random_lengths)


# ---------------------------------------------------------------------------
# brute force oracle


def test_brute_force_three_cities(collinear_d):
    assert brute_force_optimal(collinear_d).length == 14


def test_brute_force_unit_square():
    coords = np.array([[0, 0], [0, 1], [1, 1], [1, 0]], dtype=np.float64)
    diff = coords[:, None, :] - coords[None, :, :]
    d = np.floor(np.sqrt((diff ** 2).sum(-1)) + 0.5).astype(np.int64)
    best = brute_force_optimal(d)
    assert best.length == 4  # walk the perimeter
    assert tour_length(best.perm, d) == 4


def test_brute_force_lower_bounds_random_tours(make_landscape):
    landscape = make_landscape(8, seed=8)
    optimal = brute_force_optimal(landscape.d)
    rng = RandomStream(3, 0)
    for _ in range(200):
        assert optimal.length <= random_tour(landscape.d, rng).length


def test_brute_force_invariant_under_relabeling(make_landscape):
    landscape = make_landscape(7, seed=9)
    rng = np.random.default_rng(10)
    relabel = rng.permutation(7)
    shuffled = landscape.d[np.ix_(relabel, relabel)]
    assert brute_force_optimal(shuffled).length == brute_force_optimal(landscape.d).length


def test_brute_force_rejects_large_instances(make_landscape):
    landscape = make_landscape(12, seed=11)
    with pytest.raises(ValueError):
        brute_force_optimal(landscape.d)


# ---------------------------------------------------------------------------
# the landscape container


def test_landscape_from_matrix_carries_candidates(collinear_d):
    landscape = SearchLandscape.from_matrix(collinear_d, k=5, name="x")
    assert landscape.n == 3
    assert landscape.neighbors.shape == (3, 2)
    assert landscape.name == "x"
