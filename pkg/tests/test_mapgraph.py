from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from conftest import isomorphic
from locross.decomposition import validate_td
from locross.embedding import (
    RotationSystem,
    euler_genus,
    random_connected_subembedding,
    random_planar_triangulation,
    torus_grid_rotation,
)
from locross.graph import Graph, GraphError
from locross.mapgraph import (
    MapWitness,
    MapWitnessError,
    half_square,
    map_blowup,
    map_bound,
    map_ltd,
    medial_witness,
    witness_from_nations,
    witness_graph,
    witness_to_map,
    yz_generator,
)
from locross.oracles import min_separator_bruteforce
from test_embedding import k4_plane


def star_witness(d=3):
    # A = {0}, B = {1..d}; every B-vertex is a leaf.
    rs = RotationSystem.from_neighbor_orders(d + 1, [list(range(1, d + 1))] + [[0]] * d)
    return MapWitness.of(rs, 1)


def c6_witness():
    # A = {0,1,2}, B = {3,4,5}; a_i sits between b_{i+2} and b_i around the hexagon.
    orders = [[5, 3], [3, 4], [4, 5], [0, 1], [1, 2], [2, 0]]
    return MapWitness.of(RotationSystem.from_neighbor_orders(6, orders), 3)


def test_half_square_star():
    h = Graph.from_edges(4, [(0, 3), (1, 3), (2, 3)])
    g, labels = half_square(h, [0, 1, 2])
    assert g == Graph.complete(3) and labels == (0, 1, 2)


def test_half_square_path():
    g, labels = half_square(Graph.path(3), [0, 2])
    assert g.edges == {(0, 1)} and labels == (0, 2)


def test_half_square_c6():
    assert half_square(Graph.cycle(6), [0, 2, 4])[0] == Graph.complete(3)


def test_half_square_rejects_same_side_edge():
    with pytest.raises(GraphError):
        half_square(Graph.path(3), [0, 1])


def test_star_nation_structure():
    nm, g = witness_to_map(star_witness())
    assert nm.g0 == Graph.complete(3)
    assert len(nm.nations) == 1
    assert g.n == 1


def test_c6_nation_structure():
    w = c6_witness()
    assert euler_genus(w.rs) == 0
    nm, g = witness_to_map(w)
    assert nm.g0 == Graph.complete(3)
    assert len(nm.nations) == 3
    assert g == Graph.complete(3)
    assert len(nm.lakes) == 2  # both hexagon sides


def test_empty_b():
    rs = RotationSystem(3, (), ((), (), ()))
    nm, g = witness_to_map(MapWitness.of(rs, 3))
    assert nm.g0.n == 0 and g == Graph(3)


def test_witness_rejects_bad_classes():
    with pytest.raises(MapWitnessError):
        MapWitness(RotationSystem.from_neighbor_orders(2, [[1], [0]]), 2, 1)
    with pytest.raises(MapWitnessError):
        MapWitness(star_witness().rs, 1, 0)


def test_witness_json_round_trip():
    w = c6_witness()
    assert MapWitness.from_json(json.loads(json.dumps(w.to_json()))) == w


@pytest.mark.parametrize(
    "rs",
    [
        RotationSystem.from_neighbor_orders(3, [[1, 2], [2, 0], [0, 1]]),
        k4_plane(),
        RotationSystem.from_neighbor_orders(2, [[1], [0]]),
    ],
    ids=["K3", "K4", "K2"],
)
def test_medial_witness_small(rs):
    w = medial_witness(rs)
    assert w.d == 2
    assert w.rs.n - w.a_count == rs.m
    assert isomorphic(witness_graph(w), rs.graph)
    assert w.genus() == euler_genus(rs)


def test_nations_round_trip_through_g0():
    # Every face of a plane triangulation becomes a nation of its own.
    rs0 = random_planar_triangulation(12, seed=1)
    w = witness_from_nations(rs0, range(len(rs0.faces)))
    assert w.genus() == 0
    assert w.d == max(len(c) for c in rs0.rotation)


def test_nations_torus():
    rs0 = torus_grid_rotation(4, 4)
    w = witness_from_nations(rs0, range(0, len(rs0.faces), 2))
    assert w.genus() == euler_genus(rs0)


def test_map_ltd_star():
    # A = {0,1,2} around one B-vertex of degree 3
    rs = RotationSystem.from_neighbor_orders(4, [[3], [3], [3], [0, 1, 2]])
    ltd, cert = map_ltd(MapWitness.of(rs, 3))
    assert validate_td(Graph.complete(3), ltd.td, ltd.layering) is None
    assert (cert.g, cert.d, cert.bound) == (0, 3, 21)
    assert ltd.layered_width <= 21


def test_map_ltd_z222():
    inst = yz_generator(2, 2, 2)
    ltd, cert = map_ltd(inst.witness)
    assert cert.g == 0 and cert.d == 8
    assert ltd.layered_width <= 51
    assert validate_td(inst.z, ltd.td, ltd.layering) is None


def test_map_ltd_toroidal_medial():
    w = medial_witness(torus_grid_rotation(4, 4))
    ltd, cert = map_ltd(w)
    assert cert.g == 2 and cert.bound == 35
    assert ltd.layered_width <= 35


def test_yz_111_is_k4():
    assert yz_generator(1, 1, 1).z == Graph.complete(4)


def test_yz_222_size():
    assert yz_generator(2, 2, 2).z.n == 32


@pytest.mark.parametrize("p,q,r", [(3, 2, 1), (2, 3, 2), (1, 4, 3)])
def test_yz_rows_and_columns_partition(p, q, r):
    inst = yz_generator(p, q, r)
    assert inst.z.n == 4 * p * q * r
    assert len(inst.rows) == q * r and len(inst.columns) == p * r
    cells = [v for part in inst.rows + inst.columns for v in part]
    assert sorted(cells) == list(range(inst.z.n))
    for part in inst.rows + inst.columns:
        # consecutive nations in a row or column touch
        assert all(inst.z.has_edge(a, b) for a, b in zip(part, part[1:]))


@pytest.mark.parametrize("case", [(1, 1, 1), (1, 1, 2), (1, 1, 3), (2, 2, 1)])
def test_z_separator_lower_bound(case):
    p, q, r = case
    z = yz_generator(p, q, r).z
    assert len(min_separator_bruteforce(z)) >= q * r / 2


def test_blowup_k5():
    inst = map_blowup(Graph.complete(5), 8, 2)
    assert inst.graph.n == (4 * 64 * 2 - 32) * 5 == 2400
    assert len(inst.edge_block(0, 1)) == 8 * 64 * 2 - 32 * 2
    assert inst.below_analysis_q
    assert inst.witness.d <= 8
    assert inst.witness.genus() == euler_genus(RotationSystem.from_neighbor_orders(5, Graph.complete(5).adj))


def test_blowup_rejects_small_q_and_high_degree():
    with pytest.raises(GraphError):
        map_blowup(Graph.complete(5), 4, 2)
    with pytest.raises(GraphError):
        map_blowup(Graph.complete(6), 8, 2)
    with pytest.raises(GraphError):
        map_blowup(Graph.complete(5), 8, 1)


def test_map_bound():
    assert map_bound(0, 3) == 21 and map_bound(2, 2) == 35


@st.composite
def witnesses(draw):
    if draw(st.booleans()):
        base = random_planar_triangulation(draw(st.integers(3, 10)), draw(st.integers(0, 10**6)))
    else:
        base = torus_grid_rotation(draw(st.integers(3, 4)), draw(st.integers(3, 4)))
    return random_connected_subembedding(base, draw(st.floats(0.0, 0.6)), draw(st.integers(0, 10**6)))


@settings(max_examples=40, deadline=None)
@given(witnesses())
def test_medial_round_trips(rs):
    w = medial_witness(rs)
    assert w.genus() == euler_genus(rs)
    g = witness_graph(w)
    assert isomorphic(g, rs.graph)
    nm, mg = witness_to_map(w)
    assert mg == g
    ltd, cert = map_ltd(w)
    assert validate_td(g, ltd.td, ltd.layering) is None
    layer = ltd.layering.index
    for bag in ltd.td.bags:
        counts = {}
        for v in bag:
            counts[layer[v]] = counts.get(layer[v], 0) + 1
        assert max(counts.values(), default=0) <= cert.bound


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 2))
def test_yz_map_round_trip(p, q, r):
    inst = yz_generator(p, q, r)
    assert inst.witness.genus() == 0
    _, mg = witness_to_map(inst.witness)
    assert mg == inst.z
