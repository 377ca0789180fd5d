from __future__ import annotations

import itertools
import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs
from locross.decomposition import (
    MIN_CONSTANT,
    DecompositionError,
    LayeredTreeDecomposition,
    PathDecomposition,
    ProviderContractError,
    TreeDecomposition,
    flatten_layered,
    join_decompositions,
    layered_width,
    flatten_bound,
    pathwidth_constants,
    pathwidth_decomposition,
    separator_from_td,
    td_from_elimination_order,
    td_from_json,
    td_to_json,
    validate_td,
)
from locross.embedding import planar_grid_rotation, random_connected_subembedding, random_planar_triangulation
from locross.generators import grid2
from locross.graph import Graph, Layering, bfs_layering
from locross.oracles import exact_pathwidth, exact_treewidth, is_separator
from locross.surface import flat_planar_provider, planar_ltd


def best_order(g: Graph) -> list[int]:
    """Optimal elimination order by exhaustive search (n <= 7), else min-degree (exact on forests)."""
    if g.n <= 7:
        return list(min(itertools.permutations(range(g.n)), key=lambda o: td_from_elimination_order(g, o).width))
    nbrs = [set(a) for a in g.adj]
    left, order = set(range(g.n)), []
    while left:
        v = min(left, key=lambda x: (len(nbrs[x]), x))
        order.append(v)
        left.discard(v)
        for a in nbrs[v]:
            nbrs[a] |= nbrs[v] - {a}
            nbrs[a].discard(v)
    return order


def exact_provider(sub: Graph, labels) -> TreeDecomposition:
    return td_from_elimination_order(sub, best_order(sub))


def test_k3_single_bag():
    td = TreeDecomposition.single(range(3))
    assert validate_td(Graph.complete(3), td) is None
    assert td.width == 2


def test_p3_two_bags():
    td = TreeDecomposition.of([{0, 1}, {1, 2}], [(0, 1)])
    assert validate_td(Graph.path(3), td) is None
    assert td.width == 1


def test_uncovered_edge_message():
    td = TreeDecomposition.of([{0, 1}, {2}], [(0, 1)])
    assert validate_td(Graph.path(3), td) == "edge 12 uncovered"


def test_disconnected_subtree_message():
    td = TreeDecomposition.of([{0, 1}, {1, 2}, {0}], [(0, 1), (1, 2)])
    assert validate_td(Graph.path(3), td) == "vertex 0 subtree disconnected"


def test_layering_violation_message():
    td = TreeDecomposition.single(range(3))
    bad = Layering.of([{0}, {1}, {2}])
    assert validate_td(Graph.complete(3), td, bad).startswith("layering edge violation")


def test_missing_vertex_and_non_tree():
    assert validate_td(Graph(2), TreeDecomposition.single([0])) == "vertex 1 in no bag"
    td = TreeDecomposition.of([{0}, {1}], [])
    assert validate_td(Graph(2), td) == "decomposition tree is not a tree"


def test_empty_graph_width():
    assert PathDecomposition(()).width == -1
    assert validate_td(Graph(0), TreeDecomposition.of([])) is None


def test_layered_width_counts_per_layer():
    g = Graph.path(4)
    td = TreeDecomposition.single(range(4))
    assert layered_width(g, td, Layering.of([{0}, {1}, {2}, {3}])) == 1
    assert layered_width(g, td, Layering.of([{0, 1}, {2, 3}])) == 2


def test_join_links_through_empty_bag():
    a = TreeDecomposition.single([0])
    b = TreeDecomposition.single([1])
    td = join_decompositions([a, b])
    assert validate_td(Graph(2), td) is None
    assert frozenset() in td.bags


def test_flatten_single_layer_degenerate():
    g = Graph.complete(5)
    ltd = LayeredTreeDecomposition(TreeDecomposition.single(range(5)), Layering.of([range(5)]), 5)
    td = flatten_layered(g, ltd)
    assert validate_td(g, td) is None
    assert td.width <= 4


def test_flatten_path_unit_layers():
    g = Graph.path(16)
    td0 = td_from_elimination_order(g, range(16))
    layering = bfs_layering(g, 0)
    ltd = LayeredTreeDecomposition(td0, layering, layered_width(g, td0, layering))
    assert ltd.layered_width == 1
    td = flatten_layered(g, ltd)
    assert validate_td(g, td) is None
    assert 1 <= td.width <= 7


def test_flatten_grid_5x5():
    rs = planar_grid_rotation(5, 5)
    ltd, _ = planar_ltd(rs)
    assert ltd.layered_width <= 3
    td = flatten_layered(rs.graph, ltd)
    assert validate_td(rs.graph, td) is None
    assert 5 <= td.width <= math.floor(2 * math.sqrt(3 * 25) - 1)


def test_flatten_rejects_invalid_ltd():
    g = Graph.path(3)
    ltd = LayeredTreeDecomposition(TreeDecomposition.single([0, 1]), Layering.of([{0}, {1}, {2}]), 1)
    with pytest.raises(DecompositionError):
        flatten_layered(g, ltd)


def test_separator_complete_graph():
    g = Graph.complete(6)
    assert separator_from_td(g, TreeDecomposition.single(range(6))) == frozenset(range(6))


def test_separator_path_five():
    g = Graph.path(5)
    td = td_from_elimination_order(g, range(5))
    s = separator_from_td(g, td)
    assert len(s) == 2
    assert max(map(len, g.components(s))) <= 2


def test_separator_grid_flattened():
    rs = planar_grid_rotation(4, 4)
    ltd, _ = planar_ltd(rs)
    td = flatten_layered(rs.graph, ltd)
    s = separator_from_td(rs.graph, td)
    assert len(s) <= td.width + 1
    assert is_separator(rs.graph, s)


def test_pathwidth_single_vertex():
    pd = pathwidth_decomposition(Graph(1), exact_provider, 2)
    assert pd.bags == (frozenset({0}),)
    assert pd.width == 0


def test_pathwidth_p8_exact_provider():
    g = Graph.path(8)
    pd = pathwidth_decomposition(g, exact_provider, 2)
    assert validate_td(g, pd) is None
    assert pd.width >= exact_pathwidth(g) == 1
    _, c_prime = pathwidth_constants(2)
    assert pd.width <= c_prime * math.sqrt(8) - 1


def test_pathwidth_grid_4x4():
    rs = planar_grid_rotation(4, 4)
    pd = pathwidth_decomposition(rs.graph, flat_planar_provider(rs), 2 * math.sqrt(3))
    assert validate_td(rs.graph, pd) is None
    assert pd.width <= 11 * math.sqrt(3 * 16) - 1


def test_constant_clamped():
    c_eff, c_prime = pathwidth_constants(1.0)
    assert c_eff == pytest.approx(MIN_CONSTANT)
    assert c_prime == pytest.approx(MIN_CONSTANT / (1 - math.sqrt(2 / 3)))
    assert pathwidth_constants(10.0)[0] == 10.0


def test_provider_contract_enforced():
    def greedy(sub, labels):
        return TreeDecomposition.single(range(sub.n))

    with pytest.raises(ProviderContractError) as info:
        pathwidth_decomposition(grid2(6, 6), greedy, 1.0)
    assert info.value.subgraph.n == 36


def test_json_round_trip_with_layering():
    rs = planar_grid_rotation(3, 4)
    ltd, _ = planar_ltd(rs)
    data = json.loads(json.dumps(td_to_json(ltd.td, ltd.layering)))
    td, layering = td_from_json(data)
    assert td == ltd.td and layering == ltd.layering


def test_json_rejects_gapped_ids():
    with pytest.raises(DecompositionError):
        td_from_json({"nodes": [{"id": 1, "bag": [0]}], "edges": []})


@st.composite
def plane_graphs(draw, max_n=30):
    n = draw(st.integers(3, max_n))
    seed = draw(st.integers(0, 10**6))
    fraction = draw(st.floats(0.0, 0.7))
    return random_connected_subembedding(random_planar_triangulation(n, seed), fraction, seed)


@settings(max_examples=40, deadline=None)
@given(plane_graphs(max_n=12))
def test_flatten_between_exact_treewidth_and_bound(rs):
    ltd, _ = planar_ltd(rs)
    td = flatten_layered(rs.graph, ltd)
    assert validate_td(rs.graph, td) is None
    k, n = ltd.layered_width, rs.n
    assert exact_treewidth(rs.graph) <= td.width <= max(flatten_bound(k, n), n - 1) + 1e-9
    assert td.width <= 2 * math.sqrt(k * n) - 1 + 1e-9


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=9))
def test_separator_balance_reverified(g):
    td = td_from_elimination_order(g, best_order(g) if g.n <= 6 else range(g.n))
    s = separator_from_td(g, td)
    assert s in td.bags
    assert is_separator(g, s)


@settings(max_examples=25, deadline=None)
@given(plane_graphs(max_n=40))
def test_pathwidth_bound_with_flat_provider(rs):
    c = 2 * math.sqrt(3)
    pd = pathwidth_decomposition(rs.graph, flat_planar_provider(rs), c)
    assert validate_td(rs.graph, pd) is None
    _, c_prime = pathwidth_constants(c)
    assert pd.width <= c_prime * math.sqrt(rs.n) - 1


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=0, max_n=8), st.randoms(use_true_random=False))
def test_elimination_order_always_valid(g, rnd):
    order = list(range(g.n))
    rnd.shuffle(order)
    assert validate_td(g, td_from_elimination_order(g, order)) is None
