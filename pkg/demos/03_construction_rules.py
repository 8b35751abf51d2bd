"""Compare the two tour-construction rules.  The social rule builds a
tour from the shared pheromone field alone; the mixed rule copies a
sampled fraction of a parent tour's edges and completes the rest
socially.  Sliding the mixing setting from 0 to 1 moves the offspring
from fully social to a pure replay of the parent."""

import numpy as np

from cgoas import (
    MixedRuleParams,
    PheromoneParams,
    RandomStream,
    construct_mixed,
    construct_social,
    init_pheromone,
    nearest_neighbor_tour,
    tour_distance,
)
from cgoas.landscape import SearchLandscape
from cgoas.tsplib import TspInstance, build_cost_matrix


def small_landscape(n=40, seed=9):
    coord_rng = np.random.default_rng(seed)
    coords = coord_rng.uniform(0, 1000, size=(n, 2))
    instance = TspInstance(name=f"uniform{n}", dimension=n,
                           edge_weight_type="EUC_2D", coords=coords)
    return SearchLandscape.from_matrix(build_cost_matrix(instance), k=20)


def main():
    landscape = small_landscape()
    n = landscape.n
    params = PheromoneParams()
    parent = nearest_neighbor_tour(landscape.d)
    psi = init_pheromone(n, params, f_seed=parent.length)
    print(f"{n} cities; parent tour (greedy) length {parent.length}")

    rng = RandomStream(21, 0)
    social = [construct_social(psi, landscape, params, rng) for _ in range(200)]
    social_lengths = [t.length for t in social]
    print(f"\nsocial rule, 200 tours: lengths "
          f"{min(social_lengths)}..{max(social_lengths)} "
          f"(mean {np.mean(social_lengths):.0f})")

    print("\nmixed rule: fraction of parent edges kept as the mixing "
          "setting rises")
    print(f"  {'p_ind':>6}  {'kept edges':>10}  {'mean length':>11}")
    for p_ind in (0.0, 0.2, 0.5, 0.8, 1.0):
        mixed = MixedRuleParams(p_ind=p_ind)
        kept, lengths = [], []
        for _ in range(200):
            child = construct_mixed(parent, psi, landscape, mixed, params, rng)
            # edge distance n - shared counts how many parent edges survive
            shared = n - tour_distance(child.perm, parent.perm)
            kept.append(shared)
            lengths.append(child.length)
        print(f"  {p_ind:>6.1f}  {np.mean(kept):>10.1f}  "
              f"{np.mean(lengths):>11.0f}")

    print("\nthe endpoints are exact:")
    mixed_zero = MixedRuleParams(p_ind=0.0)
    mixed_one = MixedRuleParams(p_ind=1.0)
    rng_a, rng_b = RandomStream(22, 0), RandomStream(22, 0)
    child_zero = construct_mixed(parent, psi, landscape, mixed_zero, params, rng_a)
    social_twin = construct_social(psi, landscape, params, rng_b)
    print(f"  p_ind=0 with a shared random stream rebuilds the social "
          f"tour edge for edge: "
          f"{tour_distance(child_zero.perm, social_twin.perm) == 0}")
    child_one = construct_mixed(parent, psi, landscape, mixed_one, params, rng_a)
    print(f"  p_ind=1 replays the parent (up to rotation): "
          f"{tour_distance(child_one.perm, parent.perm) == 0}")


if __name__ == "__main__":
    main()
