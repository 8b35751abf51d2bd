"""3-opt refinement: correctness against an exhaustive move oracle."""

import itertools

import numpy as np
import pytest

from cgoas import (
    apply_segment_reversal,
    brute_force_optimal,
    three_opt_improve,
    tour_distance,
    tour_length,
)
from cgoas._rng import RandomStream
from cgoas.landscape import random_tour


def plain_cycle_length(perm, dl):
    """Tour length summed in plain Python over a list-of-lists matrix."""
    n = len(perm)
    return sum(dl[perm[i]][perm[(i + 1) % n]] for i in range(n))


def exhaustive_improving_move_exists(perm, d):
    """True if any 2- or 3-edge exchange shortens the tour.

    For every triple of cut points the tour splits into segments S1, S2,
    S3; all eight reassemblies (reverse S1 or not, reverse S2 or not,
    swap S1/S2 or not) are rebuilt and measured from scratch, which
    covers every 2-opt move as a degenerate case.
    """
    n = len(perm)
    dl = [[int(x) for x in row] for row in d]
    perm = [int(c) for c in perm]
    base = plain_cycle_length(perm, dl)
    for i, j, k in itertools.combinations(range(n), 3):
        s1 = perm[i + 1:j + 1]
        s2 = perm[j + 1:k + 1]
        s3 = perm[k + 1:] + perm[:i + 1]
        for first, second in ((s1, s2), (s2, s1)):
            for a in (first, first[::-1]):
                for b in (second, second[::-1]):
                    candidate = s3 + a + b
                    if plain_cycle_length(candidate, dl) < base:
                        return True
    return False


# ---------------------------------------------------------------------------
# soundness of the optimizer's output


def test_output_is_valid_and_cache_consistent(make_landscape):
    landscape = make_landscape(80, seed=51)
    rng = RandomStream(61, 0)
    for _ in range(10):
        start = random_tour(landscape.d, rng)
        improved = three_opt_improve(start, landscape)
        assert sorted(improved.perm.tolist()) == list(range(80))
        assert improved.length == tour_length(improved.perm, landscape.d)
        assert improved.length <= start.length


def test_random_tours_strictly_improve(make_landscape):
    landscape = make_landscape(200, seed=52)
    rng = RandomStream(62, 0)
    for _ in range(5):
        start = random_tour(landscape.d, rng)
        assert three_opt_improve(start, landscape).length < start.length


def test_idempotent_on_its_own_output(make_landscape):
    landscape = make_landscape(60, seed=53)
    rng = RandomStream(63, 0)
    for _ in range(5):
        once = three_opt_improve(random_tour(landscape.d, rng), landscape)
        twice = three_opt_improve(once, landscape)
        assert twice.length == once.length


def test_no_improving_exchange_remains(make_landscape):
    # With full candidate lists the returned tour must admit no 2- or
    # 3-edge exchange at all; the oracle tries every one from scratch.
    for seed in (54, 55, 56):
        landscape = make_landscape(28, seed=seed, k=27)
        rng = RandomStream(64, 0)
        for _ in range(3):
            improved = three_opt_improve(random_tour(landscape.d, rng), landscape)
            assert not exhaustive_improving_move_exists(improved.perm, landscape.d)


def test_restarts_reach_the_exact_optimum(make_landscape):
    for seed in range(45, 54):
        n = 5 + (seed % 5)
        landscape = make_landscape(n, seed=seed)
        optimum = brute_force_optimal(landscape.d).length
        rng = RandomStream(65, 0)
        best = min(
            three_opt_improve(random_tour(landscape.d, rng), landscape).length
            for _ in range(50)
        )
        assert best == optimum


def test_already_optimal_tour_is_a_fixed_point(make_landscape):
    landscape = make_landscape(9, seed=57)
    optimal = brute_force_optimal(landscape.d)
    improved = three_opt_improve(optimal, landscape)
    assert improved.length == optimal.length
    # same cycle: every edge of the input survives
    assert tour_distance(improved.perm, optimal.perm) == 0


# ---------------------------------------------------------------------------
# the reversal primitive


def test_reversal_updates_length_incrementally(make_landscape):
    landscape = make_landscape(30, seed=58)
    rng = RandomStream(66, 0)
    np_rng = np.random.default_rng(59)
    for _ in range(50):
        tour = random_tour(landscape.d, rng)
        i, j = int(np_rng.integers(30)), int(np_rng.integers(30))
        reversed_tour = apply_segment_reversal(tour, i, j, landscape.d)
        assert sorted(reversed_tour.perm.tolist()) == list(range(30))
        assert reversed_tour.length == tour_length(reversed_tour.perm, landscape.d)


def test_reversal_of_single_city_is_identity(make_landscape):
    landscape = make_landscape(12, seed=60)
    tour = random_tour(landscape.d, RandomStream(67, 0))
    same = apply_segment_reversal(tour, 4, 4, landscape.d)
    assert np.array_equal(same.perm, tour.perm)
    assert same.length == tour.length


def test_double_reversal_restores_the_tour(make_landscape):
    landscape = make_landscape(18, seed=61)
    tour = random_tour(landscape.d, RandomStream(68, 0))
    once = apply_segment_reversal(tour, 3, 11, landscape.d)
    back = apply_segment_reversal(once, 3, 11, landscape.d)
    assert np.array_equal(back.perm, tour.perm)
    assert back.length == tour.length


def test_wraparound_reversal_is_supported(make_landscape):
    landscape = make_landscape(15, seed=62)
    tour = random_tour(landscape.d, RandomStream(69, 0))
    wrapped = apply_segment_reversal(tour, 12, 2, landscape.d)  # crosses the seam
    assert sorted(wrapped.perm.tolist()) == list(range(15))
    assert wrapped.length == tour_length(wrapped.perm, landscape.d)


def test_whole_tour_reversal_keeps_length(make_landscape):
    landscape = make_landscape(10, seed=63)
    tour = random_tour(landscape.d, RandomStream(70, 0))
    flipped = apply_segment_reversal(tour, 0, 9, landscape.d)
    assert flipped.length == tour.length
    assert tour_length(flipped.perm, landscape.d) == tour.length


def test_reversal_rejects_bad_positions(make_landscape):
    landscape = make_landscape(8, seed=64)
    tour = random_tour(landscape.d, RandomStream(71, 0))
    with pytest.raises(ValueError):
        apply_segment_reversal(tour, -1, 3, landscape.d)
    with pytest.raises(ValueError):
        apply_segment_reversal(tour, 0, 8, landscape.d)
