from __future__ import annotations

import itertools
import statistics

import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs
from locross.embedder import (
    HostError,
    build_host,
    choose_q,
    crossing_report,
    default_expander,
    embed,
    host_violation,
    load_balance,
    log2_ceil,
)
from locross.generators import random_regular
from locross.graph import Graph, GraphError, cyclomatic_number


def replay_greedy(degrees, targets):
    """Step-by-step rerun: each step takes the largest label both current vertices can still take."""
    left, right = list(degrees), list(targets)
    i = j = 0
    out = []
    while i < len(left):
        if left[i] == 0:
            i += 1
            continue
        if right[j] == 0:
            j += 1
            continue
        lab = min(left[i], right[j])
        out.append((i, j, lab))
        left[i] -= lab
        right[j] -= lab
    return out


def test_single_degree():
    lb = load_balance([5], 1)
    assert lb.edges == ((0, 0, 5),)


def test_figure_sequence():
    lb = load_balance([7, 5, 5, 4, 3, 3, 2, 1], 6)
    assert lb.right_sums == [5] * 6
    assert len(lb.edges) <= 13


def test_three_ones_two_targets():
    lb = load_balance([1, 1, 1], 2)
    assert sorted(lb.right_sums) == [1, 2]
    assert len(lb.edges) == 3


def test_load_balance_rejects_bad_input():
    with pytest.raises(GraphError):
        load_balance([1, 0], 2)
    with pytest.raises(GraphError):
        load_balance([1], 0)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 40), min_size=1, max_size=300), st.integers(1, 60))
def test_load_balance_guarantees(degrees, q):
    lb = load_balance(degrees, q)
    base, extra = divmod(sum(degrees), q)
    assert sorted(lb.targets) == [base] * (q - extra) + [base + 1] * extra
    assert list(lb.edges) == replay_greedy(degrees, lb.targets)
    assert lb.left_sums == degrees
    assert max(lb.right_sums) - min(lb.right_sums) <= 1
    assert len(lb.edges) <= len(degrees) + q - 1
    assert all(lab >= 1 for _, _, lab in lb.edges)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=8), st.integers(1, 7))
def test_target_placement_maximises_edges(degrees, q):
    base, extra = divmod(sum(degrees), q)
    best = max(
        len(replay_greedy(degrees, [base + 1 if j in ceil else base for j in range(q)]))
        for ceil in itertools.combinations(range(q), extra)
    )
    assert len(load_balance(degrees, q).edges) == best


def test_equality_witness():
    lb = load_balance([7, 5, 5, 4, 3, 3, 2, 1], 6)
    assert len(lb.edges) == 8 + 6 - 1


def test_load_balance_large():
    import random

    rng = random.Random(3)
    degrees = [rng.randint(1, 12) for _ in range(10_000)]
    lb = load_balance(degrees, 97)
    assert lb.left_sums == degrees and len(lb.edges) <= 10_000 + 96


@pytest.mark.parametrize("g,q", [(3, 1), (30, 10), (300, 100), (1, 1), (5, 1)])
def test_choose_q(g, q):
    assert choose_q(g) == q


def test_single_edge_single_q_vertex():
    hm = build_host(Graph.path(2), Graph(1))
    assert hm.routes[(0, 1)] == (0, 2, 1)
    assert host_violation(hm) is None
    rep = crossing_report(hm)
    assert rep.crossing_bounds[(0, 1)] == 0
    assert rep.genus == cyclomatic_number(Graph(1)) == 0


def test_two_edges_share_q_vertex():
    hm = build_host(Graph.path(3), Graph(1))
    rep = crossing_report(hm)
    assert set(rep.crossing_bounds.values()) == {1}


def test_k4_over_c4():
    hm = build_host(Graph.complete(4), Graph.cycle(4), seed=0)
    assert host_violation(hm) is None
    assert all(all(x >= 4 for x in p[1:-1]) for p in hm.routes.values())
    rep = crossing_report(hm)
    loads = {}
    for p in hm.routes.values():
        for x in p[1:-1]:
            loads[x] = loads.get(x, 0) + 1
    for e, p in hm.routes.items():
        assert rep.crossing_bounds[e] == sum(loads[x] - 1 for x in p[1:-1])


def test_assignment_counts_at_scale():
    g = random_regular(4, 256, seed=5)
    hm = build_host(g, random_regular(6, 64, seed=5), seed=5)
    assert host_violation(hm) is None
    counts = {}
    for (u, v), ((_, wu), (_, wv)) in hm.assignment.items():
        counts[(u, wu)] = counts.get((u, wu), 0) + 1
        counts[(v, wv)] = counts.get((v, wv), 0) + 1
    labels = {(hm.left_vertices[i], 256 + j): lab for i, j, lab in hm.bipartite.edges}
    assert counts == labels


def test_host_rejects_bad_q():
    with pytest.raises(HostError):
        build_host(Graph.path(2), Graph(2))
    with pytest.raises(HostError):
        build_host(Graph.path(2), Graph.complete(10))


def test_validator_catches_tampering():
    hm = build_host(Graph.complete(4), Graph.cycle(4), seed=1)
    routes = dict(hm.routes)
    routes[(0, 1)] = (0, 1)
    bad = type(hm)(**{**hm.__dict__, "routes": routes})
    assert "non-host edge" in host_violation(bad)


def test_genus_within_budget():
    for budget in (3, 30, 90):
        hm, rep = embed(random_regular(4, 64, seed=2), budget, seed=2)
        assert rep.genus <= budget
        assert host_violation(hm, budget) is None


def test_max_crossings_median_non_increasing_in_q():
    g = random_regular(4, 256, seed=1)
    medians = []
    for q in (8, 16, 32, 64):
        vals = [crossing_report(build_host(g, default_expander(q, s), s)).max_crossings_per_edge for s in range(5)]
        medians.append(statistics.median(vals))
    assert medians == sorted(medians, reverse=True)


def test_log2_ceil():
    assert [log2_ceil(q) for q in (1, 2, 3, 4, 5, 64)] == [1, 1, 2, 2, 3, 6]


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=12), st.integers(1, 9), st.integers(0, 10**6))
def test_host_invariants_random(g, q, seed):
    q_graph = default_expander(q, seed)
    hm = build_host(g, q_graph, seed)
    assert host_violation(hm) is None
    assert cyclomatic_number(hm.host) <= cyclomatic_number(q_graph) + q - 1
