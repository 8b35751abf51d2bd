"""Load a bundled instance, inspect its cost structure, and compare a
few first tours: random, greedy nearest-neighbor, and the bundled
optimal tour.  Everything here is deterministic."""

import numpy as np

from cgoas import (
    RandomStream,
    SearchLandscape,
    load_instance,
    load_optimal_tour,
    nearest_neighbor_tour,
    random_tour,
    tour_length,
)
from cgoas.benchmarks import OPTIMAL_LENGTHS


def main():
    instance = load_instance("berlin52")
    landscape = SearchLandscape.from_instance(instance, k=20)
    d = landscape.d

    print(f"instance {instance.name}: {instance.dimension} cities, "
          f"edge weights {instance.edge_weight_type}")
    x0, y0 = instance.coords[0]
    print(f"first city at ({x0:.0f}, {y0:.0f}), "
          f"distance city0-city1 = {d[0, 1]}")
    print(f"cost matrix: shape {d.shape}, dtype {d.dtype}, "
          f"symmetric: {np.array_equal(d, d.T)}")

    nn = landscape.neighbors
    print(f"\ncandidate lists: {nn.shape[1]} nearest neighbors per city")
    print(f"nearest three to city 0: {nn[0, :3].tolist()} at distances "
          f"{[int(d[0, j]) for j in nn[0, :3]]}")

    rng = RandomStream(7, 0)
    randoms = [random_tour(d, rng).length for _ in range(10)]
    greedy = nearest_neighbor_tour(d, start=0)
    print(f"\n10 random tours: lengths {min(randoms)}..{max(randoms)}")
    print(f"greedy nearest-neighbor tour: {greedy.length}")

    opt_perm = load_optimal_tour(instance.name)
    opt_len = tour_length(np.asarray(opt_perm), d)
    print(f"bundled optimal tour: {opt_len} "
          f"(published optimum {OPTIMAL_LENGTHS[instance.name]})")
    gap = 100.0 * (greedy.length - opt_len) / opt_len
    print(f"the greedy tour is {gap:.1f}% above the optimum — "
          f"plenty of room for the search to close")


if __name__ == "__main__":
    main()
