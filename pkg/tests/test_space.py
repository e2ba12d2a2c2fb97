import itertools
import math

import pytest

from agentsim.rng import Rng
from agentsim.space import (ContinuousSpace, GraphSpace, GridSpace,
                            NoEmptyPosition, OccupiedNode)

from .oracles import brute_force_neighbors, grid_metric_within
from .ring_space import RingSpace


# --- grid neighborhoods ---

def test_interior_chebyshev_r1_is_moore():
    g = GridSpace((3, 3))
    assert len(list(g.neighbor_positions((1, 1), 1))) == 8


def test_interior_euclidean_r1_is_von_neumann():
    g = GridSpace((3, 3), metric="euclidean")
    assert sorted(g.neighbor_positions((1, 1), 1)) == [(0, 1), (1, 0), (1, 2), (2, 1)]


def test_3d_chebyshev_r1():
    g = GridSpace((3, 3, 3))
    assert len(list(g.neighbor_positions((1, 1, 1), 1))) == 26


def test_corner_wraps_on_periodic_grid():
    g = GridSpace((3, 3), periodic=True)
    assert len(list(g.neighbor_positions((0, 0), 1))) == 8


def test_corner_clipped_on_bounded_grid():
    g = GridSpace((3, 3))
    assert len(list(g.neighbor_positions((0, 0), 1))) == 3


def test_r0_has_no_neighbor_positions():
    g = GridSpace((3, 3))
    assert list(g.neighbor_positions((1, 1), 0)) == []


def test_origin_never_included():
    g = GridSpace((5, 5), periodic=True)
    for r in (1, 2, 3):
        assert (2, 2) not in set(g.neighbor_positions((2, 2), r))


def test_periodic_neighbor_counts_translation_invariant():
    g = GridSpace((6, 4), periodic=True)
    counts = {len(list(g.neighbor_positions(p, 2))) for p in g.all_positions()}
    assert len(counts) == 1


def test_metric_override_per_query():
    g = GridSpace((5, 5), metric="chebyshev")
    moore = set(g.neighbor_positions((2, 2), 1))
    von_neumann = set(g.neighbor_positions((2, 2), 1, metric="euclidean"))
    assert len(moore) == 8
    assert len(von_neumann) == 4
    assert von_neumann < moore


def test_grid_neighbor_positions_match_metric_oracle():
    for metric in ("chebyshev", "euclidean"):
        for periodic in (False, True):
            g = GridSpace((5, 4), periodic=periodic, metric=metric)
            for r in (1, 2):
                got = set(g.neighbor_positions((1, 2), r))
                want = {p for p in g.all_positions()
                        if p != (1, 2) and grid_metric_within((1, 2), p, r, (5, 4),
                                                              periodic, metric)}
                assert got == want, (metric, periodic, r)


def test_grid_neighbor_ids_include_queried_cell():
    g = GridSpace((3, 3))
    g.register_agent(1, (1, 1))
    g.register_agent(2, (1, 2))
    g.register_agent(3, (0, 0))
    got = list(g.neighbor_ids((1, 1), 1))
    assert got[0] == 1  # ids at the queried cell come first
    assert sorted(got) == [1, 2, 3]


# --- grid emptiness ---

def test_empty_grid_has_all_positions_empty():
    g = GridSpace((2, 2))
    assert list(g.empty_positions()) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_random_empty_on_full_1x1_raises():
    g = GridSpace((1, 1))
    g.register_agent(1, (0, 0))
    with pytest.raises(NoEmptyPosition):
        g.random_empty(Rng(0))


def test_random_empty_avoids_occupied():
    g = GridSpace((4, 4))
    rng = Rng(0)
    for i, pos in enumerate(itertools.islice(g.all_positions(), 15)):
        g.register_agent(i, pos)
    for _ in range(20):
        assert g.random_empty(rng) == (3, 3)


def test_random_position_unravels_row_major():
    g = GridSpace((4, 5))
    rng = Rng(3)
    expected_idx = Rng(3).next_below(20)
    assert g.random_position(rng) == (expected_idx // 5, expected_idx % 5)


# --- continuous space ---

def test_boundary_distance_is_inclusive():
    c = ContinuousSpace((10.0, 10.0), periodic=False, spacing=1.0)
    c.register_agent(1, (2.0, 5.0))
    c.register_agent(2, (3.0, 5.0))
    assert list(c.neighbor_ids((2.0, 5.0), 1.0)) == [1, 2]


def test_periodic_seam_neighbors():
    c = ContinuousSpace((10.0, 10.0), periodic=True, spacing=1.0)
    c.register_agent(1, (0.1, 5.0))
    c.register_agent(2, (9.9, 5.0))
    assert set(c.neighbor_ids((0.1, 5.0), 0.5)) == {1, 2}
    assert set(c.neighbor_ids((9.9, 5.0), 0.5)) == {1, 2}


def test_nonperiodic_move_out_of_extent_rejected():
    c = ContinuousSpace((5.0, 5.0), periodic=False)
    c.register_agent(1, (1.0, 1.0))
    with pytest.raises(ValueError):
        c.move(1, (6.0, 1.0))


def test_periodic_move_wraps():
    c = ContinuousSpace((5.0, 5.0), periodic=True)
    c.register_agent(1, (4.5, 4.5))
    assert c.move(1, (5.5, -0.5)) == (0.5, 4.5)


@pytest.mark.parametrize("periodic", [False, True])
def test_continuous_matches_brute_force(periodic):
    rng = Rng(2024)
    extent = (7.0, 11.0)
    for trial in range(30):
        spacing = 0.3 + rng.next_float() * 3.0
        c = ContinuousSpace(extent, periodic=periodic, spacing=spacing)
        positions = {}
        for aid in range(100):
            pos = c.random_position(rng)
            positions[aid] = pos
            c.register_agent(aid, pos)
        for _ in range(5):
            query = c.random_position(rng)
            r = rng.next_float() * 6.0
            got = set(c.neighbor_ids(query, r))
            want = brute_force_neighbors(positions, query, r,
                                         extent if periodic else None)
            assert got == want


def test_results_independent_of_spacing():
    rng = Rng(55)
    extent = (10.0, 10.0)
    positions = {}
    base = ContinuousSpace(extent, spacing=1.0)
    for aid in range(80):
        positions[aid] = base.random_position(rng)
    queries = [(base.random_position(rng), rng.next_float() * 4) for _ in range(10)]
    results = []
    for spacing in (0.5, 1.0, 2.0):
        c = ContinuousSpace(extent, periodic=True, spacing=spacing)
        for aid, pos in positions.items():
            c.register_agent(aid, pos)
        results.append([set(c.neighbor_ids(q, r)) for q, r in queries])
    assert results[0] == results[1] == results[2]


def test_default_spacing_is_twentieth_of_min_extent():
    c = ContinuousSpace((10.0, 40.0))
    assert c.spacing == 0.5


def test_continuous_has_no_discrete_positions():
    c = ContinuousSpace((5.0, 5.0))
    with pytest.raises(TypeError):
        list(c.neighbor_positions((1.0, 1.0), 1.0))


@pytest.mark.parametrize("dims,periodic", [(1, False), (3, True), (4, False)])
def test_continuous_any_dimension_matches_brute_force(dims, periodic):
    rng = Rng(808 + dims)
    extent = tuple(4.0 + rng.next_float() * 6.0 for _ in range(dims))
    for spacing in (0.7, 1.9):
        c = ContinuousSpace(extent, periodic=periodic, spacing=spacing)
        positions = {}
        for aid in range(60):
            pos = c.random_position(rng)
            positions[aid] = pos
            c.register_agent(aid, pos)
        for _ in range(6):
            query = c.random_position(rng)
            r = rng.next_float() * max(extent) / 2
            got = set(c.neighbor_ids(query, r))
            want = brute_force_neighbors(positions, query, r,
                                         extent if periodic else None)
            assert got == want


# --- graph space ---

def path_graph(n):
    g = GraphSpace(n_nodes=n)
    for i in range(n - 1):
        g.add_edge(i, i + 1)
    return g


def test_two_hop_bfs_reaches_agent():
    g = path_graph(3)
    g.register_agent(7, 2)
    assert list(g.neighbor_ids(0, 2)) == [7]
    assert list(g.neighbor_ids(0, 1)) == []


def test_removed_edge_breaks_reachability():
    g = path_graph(3)
    g.register_agent(7, 2)
    g.remove_edge(1, 2)
    assert list(g.neighbor_ids(0, 2)) == []


def test_graph_r0_empty():
    g = path_graph(2)
    g.register_agent(1, 0)
    assert list(g.neighbor_ids(0, 0)) == []


def test_same_node_agents_are_not_neighbors():
    g = path_graph(2)
    g.register_agent(1, 0)
    g.register_agent(2, 0)
    assert list(g.neighbor_ids(0, 1)) == []


def test_edges_are_directed():
    g = path_graph(2)
    g.register_agent(5, 0)
    assert list(g.neighbor_ids(1, 1)) == []


def test_remove_occupied_node_refused():
    g = path_graph(2)
    g.register_agent(1, 1)
    with pytest.raises(OccupiedNode):
        g.remove_node(1)
    g.unregister_agent(1, 1)
    g.remove_node(1)
    assert 1 not in g.nodes
    assert g.edges() == []


def test_add_edge_needs_existing_nodes():
    g = GraphSpace(n_nodes=2)
    with pytest.raises(ValueError):
        g.add_edge(0, 9)


# --- the five-operation conformance battery ---

def grid_setup():
    dims = (6, 5)
    space = GridSpace(dims, periodic=True)
    within = lambda a, b, r: grid_metric_within(a, b, r, dims, True, "chebyshev")
    return space, within, lambda rng: space.random_position(rng), [1, 2]


def continuous_setup():
    extent = (8.0, 8.0)
    space = ContinuousSpace(extent, periodic=True, spacing=1.3)

    def within(a, b, r):
        s = 0.0
        for x, y, e in zip(a, b, extent):
            d = abs(x - y)
            d = min(d, e - d)
            s += d * d
        return s <= r * r

    return space, within, lambda rng: space.random_position(rng), [1.0, 2.5]


def graph_setup():
    space = GraphSpace(n_nodes=12)
    rng = Rng(99)
    for _ in range(30):
        u, v = rng.next_below(12), rng.next_below(12)
        if u != v:
            space.out_edges[u].add(v)

    def hops(a, b):
        frontier, seen, d = {a}, {a}, 0
        while frontier:
            if b in frontier:
                return d
            frontier = {w for v in frontier for w in space.out_edges[v]} - seen
            seen |= frontier
            d += 1
        return math.inf

    within = lambda a, b, r: 1 <= hops(a, b) <= r
    return space, within, lambda rng: space.random_position(rng), [1, 2, 3]


def ring_setup():
    space = RingSpace(9)
    within = lambda a, b, r: space.distance(a, b) <= r
    return space, within, lambda rng: space.random_position(rng), [1, 2]


SETUPS = {"grid": grid_setup, "continuous": continuous_setup,
          "graph": graph_setup, "ring": ring_setup}


@pytest.mark.parametrize("name", list(SETUPS))
def test_space_contract_conformance(name):
    """Fuzz register/update/unregister through the contract only, checking
    neighbor_ids against a per-space distance oracle after every phase."""
    space, within, sample, radii = SETUPS[name]()
    rng = Rng(4242)
    alive = {}
    next_id = 1

    def check():
        for _ in range(4):
            query = sample(rng)
            for r in radii:
                got = sorted(space.neighbor_ids(query, r))
                want = sorted(i for i, p in alive.items() if within(query, p, r))
                assert got == want, (name, query, r)

    for phase in range(60):
        op = rng.next_below(3)
        if op == 0 or not alive:
            pos = sample(rng)
            space.register_agent(next_id, pos)
            alive[next_id] = pos
            next_id += 1
        elif op == 1:
            ids = sorted(alive)
            aid = ids[rng.next_below(len(ids))]
            new = sample(rng)
            space.update_position(aid, alive[aid], new)
            alive[aid] = new
        else:
            ids = sorted(alive)
            aid = ids[rng.next_below(len(ids))]
            space.unregister_agent(aid, alive.pop(aid))
        check()


@pytest.mark.parametrize("name", list(SETUPS))
def test_random_position_is_valid_and_deterministic(name):
    space, _, _, _ = SETUPS[name]()
    a = [space.random_position(Rng(1)) for _ in range(5)]
    b = [space.random_position(Rng(1)) for _ in range(5)]
    assert a == b
