"""Watch the pheromone matrix evolve: the moving limit window, pure
evaporation, deposits, and the schedule that alternates between the
iteration's best tour and the best tour found so far."""

import numpy as np

from cgoas import (
    DepositSchedule,
    PheromoneParams,
    RandomStream,
    init_pheromone,
    nearest_neighbor_tour,
    random_tour,
    update_pheromone,
)
from cgoas.pheromone import compute_tau_max, compute_tau_min
from cgoas.landscape import SearchLandscape
from cgoas.tsplib import TspInstance, build_cost_matrix


def small_landscape(n=30, seed=5):
    coord_rng = np.random.default_rng(seed)
    coords = coord_rng.uniform(0, 1000, size=(n, 2))
    instance = TspInstance(name=f"uniform{n}", dimension=n,
                           edge_weight_type="EUC_2D", coords=coords)
    return SearchLandscape.from_matrix(build_cost_matrix(instance), k=20)


def main():
    params = PheromoneParams()  # rho=0.5, p_best=0.05, alpha=1, beta=2
    landscape = small_landscape()
    n = landscape.n

    seed_tour = nearest_neighbor_tour(landscape.d)
    psi = init_pheromone(n, params, f_seed=seed_tour.length)
    print(f"greedy seed tour length {seed_tour.length}")
    print(f"initial limits: tau_max={psi.tau_max:.3e}  tau_min={psi.tau_min:.3e}")
    print(f"all trails start at the upper limit: "
          f"{np.all(psi.tau[~np.eye(n, dtype=bool)] == psi.tau_max)}")

    print("\nhow the limits move when a better tour appears:")
    for f_best in (seed_tour.length, int(0.9 * seed_tour.length),
                   int(0.8 * seed_tour.length)):
        tau_max = compute_tau_max(f_best, params.rho)
        tau_min = compute_tau_min(tau_max, params.p_best, n)
        print(f"  f_best={f_best:6d}  ->  window [{tau_min:.3e}, {tau_max:.3e}]")

    print("\nevaporation without deposits halves every trail "
          "(until the lower limit catches them):")
    rng = RandomStream(11, 0)
    f_best = seed_tour.length
    for cycle in range(1, 7):
        update_pheromone(psi, [], params, f_best=f_best)
        off = psi.tau[~np.eye(n, dtype=bool)]
        print(f"  after {cycle} cycles: trails in [{off.min():.3e}, {off.max():.3e}]")

    print("\ndeposits rebuild trails along one tour's edges:")
    tour = random_tour(landscape.d, rng)
    before = psi.tau[tour.perm[0], tour.perm[1]]
    update_pheromone(psi, [tour], params, f_best=min(f_best, tour.length))
    after = psi.tau[tour.perm[0], tour.perm[1]]
    print(f"  trail on a deposited edge: {before:.3e} -> {after:.3e} "
          f"(gain 1/{tour.length})")

    schedule = DepositSchedule()
    print("\ndeposit schedule: which cycles deposit the best-so-far tour")
    cycles = [1, 25, 26, 50, 75, 76, 124, 125, 126, 250, 251, 300]
    marks = ["best-so-far" if schedule.uses_best_so_far(t) else "iteration-best"
             for t in cycles]
    for t, mark in zip(cycles, marks):
        print(f"  cycle {t:4d}: {mark}  (interval {schedule.gb_interval(t)})")


if __name__ == "__main__":
    main()
