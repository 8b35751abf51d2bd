"""Instance parsing and bit-exact edge weights."""

import numpy as np
import pytest

from cgoas import (
    TspInstance,
    TsplibError,
    build_cost_matrix,
    build_neighbor_lists,
    edge_weight,
    parse_tsplib,
)
from cgoas.benchmarks import (
    BUNDLED_INSTANCES,
    OPTIMAL_LENGTHS,
    load_instance,
    load_optimal_tour,
)
from cgoas.landscape import tour_length


def make_instance(coords, weight_type="EUC_2D", name="tiny"):
    coords = np.asarray(coords, dtype=np.float64)
    return TspInstance(
        name=name,
        dimension=len(coords),
        edge_weight_type=weight_type,
        coords=coords,
    )


MINIMAL_FILE = """\
NAME : tiny3
TYPE : TSP
DIMENSION : 3
EDGE_WEIGHT_TYPE : EUC_2D
NODE_COORD_SECTION
1 0.0 0.0
2 0.0 3.0
3 0.0 7.0
EOF
"""


# ---------------------------------------------------------------------------
# parsing


def test_parse_minimal_file():
    inst = parse_tsplib(MINIMAL_FILE)
    assert inst.name == "tiny3"
    assert inst.dimension == 3
    assert inst.edge_weight_type == "EUC_2D"
    assert np.allclose(inst.coords, [[0, 0], [0, 3], [0, 7]])


def test_parse_tolerates_formatting_variants():
    # no space before the colon, extra blank lines, no EOF keyword,
    # scrambled node order, scientific-notation coordinates
    text = (
        "NAME: x\n\nDIMENSION:4\nEDGE_WEIGHT_TYPE  :  EUC_2D\n"
        "COMMENT : anything at all\n"
        "NODE_COORD_SECTION\n"
        " 2   1.0 0.0\n"
        "1 0 0\n"
        "4 1e0 1E0\n"
        "  3 0.0 1.0\n"
    )
    inst = parse_tsplib(text)
    assert inst.dimension == 4
    # coordinates land at their 1-based ids regardless of file order
    assert np.allclose(inst.coords[1], [1.0, 0.0])
    assert np.allclose(inst.coords[3], [1.0, 1.0])


@pytest.mark.parametrize(
    "mutation, message",
    [
        (lambda t: t.replace("DIMENSION : 3\n", ""), "DIMENSION"),
        (lambda t: t.replace("EDGE_WEIGHT_TYPE : EUC_2D", "EDGE_WEIGHT_TYPE : GEO"), "GEO"),
        (lambda t: t.replace("3 0.0 7.0\n", ""), "3"),
        (lambda t: t.replace("NODE_COORD_SECTION", "X_SECTION"), "NODE_COORD_SECTION"),
        (lambda t: t.replace("2 0.0 3.0", "1 0.0 3.0"), "duplicate"),
    ],
)
def test_parse_rejects_malformed_files(mutation, message):
    with pytest.raises(TsplibError, match=message):
        parse_tsplib(mutation(MINIMAL_FILE))


def test_parse_rejects_too_few_cities():
    text = (
        "NAME : two\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : EUC_2D\n"
        "NODE_COORD_SECTION\n1 0 0\n2 1 1\n"
    )
    with pytest.raises(TsplibError):
        parse_tsplib(text)


# ---------------------------------------------------------------------------
# edge weights: each rounding convention checked against hand arithmetic


def test_euclidean_three_four_five_triangle():
    inst = make_instance([(0, 0), (3, 0), (3, 4)])
    assert edge_weight(inst, 0, 1) == 3
    assert edge_weight(inst, 1, 2) == 4
    assert edge_weight(inst, 0, 2) == 5


def test_euclidean_rounds_to_nearest():
    inst = make_instance([(0, 0), (1, 1)])
    assert edge_weight(inst, 0, 1) == 1  # sqrt(2) = 1.414... -> 1
    far = make_instance([(0, 0), (1.5, 2.0)])
    assert edge_weight(far, 0, 1) == 3  # exactly 2.5 rounds half-up


def test_ceiling_rounds_up():
    inst = make_instance([(0, 0), (1, 1), (10, 0)], weight_type="CEIL_2D")
    assert edge_weight(inst, 0, 1) == 2  # ceil(1.414...)
    assert edge_weight(inst, 0, 2) == 10  # exact integers stay put


def test_pseudo_euclidean_rule_both_branches():
    inst = make_instance([(0, 0), (3, 4), (10, 0)], weight_type="ATT")
    # r = sqrt(25/10) = 1.581..., nearest integer 2 >= r -> 2
    assert edge_weight(inst, 0, 1) == 2
    # r = sqrt(100/10) = 3.162..., nearest integer 3 < r -> bump to 4
    assert edge_weight(inst, 0, 2) == 4


def test_edge_weight_symmetric_nonnegative_zero_diagonal():
    rng = np.random.default_rng(3)
    for weight_type in ("EUC_2D", "CEIL_2D", "ATT"):
        inst = make_instance(rng.uniform(0, 100, (12, 2)), weight_type)
        for i in range(12):
            assert edge_weight(inst, i, i) == 0
            for j in range(i + 1, 12):
                w = edge_weight(inst, i, j)
                assert w == edge_weight(inst, j, i)
                assert w >= 0


def test_edge_weight_rejects_bad_index():
    inst = make_instance([(0, 0), (1, 0), (2, 0)])
    with pytest.raises(IndexError):
        edge_weight(inst, 0, 3)


# ---------------------------------------------------------------------------
# cost matrix


def test_cost_matrix_collinear_values():
    inst = make_instance([(0, 0), (0, 3), (0, 7)])
    d = build_cost_matrix(inst)
    assert d.dtype == np.int64
    assert d.tolist() == [[0, 3, 7], [3, 0, 4], [7, 4, 0]]


def test_cost_matrix_matches_pairwise_weights():
    rng = np.random.default_rng(8)
    for weight_type in ("EUC_2D", "CEIL_2D", "ATT"):
        inst = make_instance(rng.uniform(0, 500, (9, 2)), weight_type)
        d = build_cost_matrix(inst)
        assert np.array_equal(d, d.T)
        assert np.all(np.diag(d) == 0)
        for i in range(9):
            for j in range(9):
                assert d[i, j] == edge_weight(inst, i, j)


# ---------------------------------------------------------------------------
# neighbor lists


def test_neighbor_lists_tiny_instance():
    d = np.array([[0, 3, 7], [3, 0, 4], [7, 4, 0]], dtype=np.int64)
    lists = build_neighbor_lists(d, k=20)
    assert lists.shape == (3, 2)  # min(k, N-1) entries each
    assert build_neighbor_lists(d, k=1).tolist() == [[1], [0], [1]]


def test_neighbor_lists_sorted_complete_and_self_free(make_landscape):
    landscape = make_landscape(40, seed=17)
    d, lists = landscape.d, landscape.neighbors
    k = lists.shape[1]
    assert k == 20
    for i in range(40):
        row = lists[i]
        assert i not in row
        assert len(set(row.tolist())) == k
        dists = d[i, row]
        assert np.all(np.diff(dists) >= 0)
        # no city outside the list is closer than the last list entry
        outside = np.setdiff1d(np.arange(40), np.append(row, i))
        assert d[i, outside].min() >= dists[-1]


def test_neighbor_ties_break_toward_lower_index():
    # city 0 sees cities 1 and 2 at the same distance; 1 must come first
    d = np.array(
        [[0, 5, 5, 9],
         [5, 0, 9, 5],
         [5, 9, 0, 5],
         [9, 5, 5, 0]], dtype=np.int64
    )
    lists = build_neighbor_lists(d, k=3)
    assert lists[0].tolist() == [1, 2, 3]
    assert lists[3].tolist() == [1, 2, 0]


# ---------------------------------------------------------------------------
# bundled data round trip: the shipped optimal tours must evaluate to the
# published optimal lengths exactly


@pytest.mark.parametrize("name", BUNDLED_INSTANCES)
def test_bundled_optimal_tour_has_published_length(name):
    inst = load_instance(name)
    d = build_cost_matrix(inst)
    tour = load_optimal_tour(name)
    assert tour is not None
    assert sorted(tour.tolist()) == list(range(inst.dimension))
    assert tour_length(tour, d) == OPTIMAL_LENGTHS[name]
