"""Shared fixtures: tiny hand-checkable instances and random landscapes."""

import numpy as np
import pytest

from cgoas import SearchLandscape, TspInstance, init_pheromone
from cgoas.pheromone import PheromoneParams

# Three collinear cities at y = 0, 3, 7: the only cycle has length
# 3 + 4 + 7 = 14, and every pairwise distance is exact.
COLLINEAR_D = np.array(
    [[0, 3, 7],
     [3, 0, 4],
     [7, 4, 0]], dtype=np.int64
)


@pytest.fixture
def collinear_d():
    return COLLINEAR_D.copy()


@pytest.fixture
def collinear_landscape():
    return SearchLandscape.from_matrix(COLLINEAR_D, k=20, name="collinear3")


def random_euclidean_landscape(n, seed, k=20):
    """A uniform random planar instance; numpy's generator keeps this
    independent of the package's own random streams."""
    rng = np.random.default_rng(seed)
    coords = rng.uniform(0.0, 1000.0, size=(n, 2))
    inst = TspInstance(
        name=f"rand{n}-{seed}",
        dimension=n,
        edge_weight_type="EUC_2D",
        coords=coords,
    )
    return SearchLandscape.from_instance(inst, k=k)


@pytest.fixture
def make_landscape():
    return random_euclidean_landscape


@pytest.fixture
def make_psi():
    """Fresh uniform pheromone matrix for a landscape."""

    def _make(landscape, params=None, f_seed=1000):
        return init_pheromone(landscape.n, params or PheromoneParams(), f_seed)

    return _make
