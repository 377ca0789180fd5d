from __future__ import annotations

import pytest

from locross.graph import BranchSets, Graph
from locross.minors import king_graph, king_index, verify_minor, zigzag_branch_sets, zigzag_cols, zigzag_rows


def test_single_edge_model():
    assert verify_minor(Graph.path(2), BranchSets.of([[0], [1]]), Graph.complete(2))


def test_disconnected_set_reported():
    g = Graph.from_edges(3, [(0, 1)])
    check = verify_minor(g, BranchSets.of([[0, 2], [1]]), Graph.complete(2))
    assert not check and check.violation == "set 0 disconnected"


def test_missing_adjacency_reported():
    g = Graph.from_edges(3, [(0, 1)])
    check = verify_minor(g, BranchSets.of([[0], [2]]), Graph.complete(2))
    assert not check and check.violation == "sets 0 and 1 not adjacent"


def test_king_graph_small_is_k4():
    g, branch = zigzag_branch_sets(1)
    assert g == Graph.complete(4)
    assert len(branch) == 1


def test_king_graph_edge_count():
    side = 6
    g = king_graph(3)
    assert g.m == 2 * side * (side - 1) + 2 * (side - 1) ** 2


def test_zigzag_two_sets():
    g, branch = zigzag_branch_sets(2)
    a, b = branch.sets
    assert not a & b
    assert any(g.has_edge(u, v) for u in a for v in b)


@pytest.mark.parametrize("n", [3, 4])
def test_zigzag_verifies(n):
    g, branch = zigzag_branch_sets(n)
    assert verify_minor(g, branch, Graph.complete(n))


def test_zigzag_parity_separates_rows_from_columns():
    n = 5
    for i in range(1, n + 1):
        assert all((x + y) % 2 == 0 for x, y in zigzag_rows(n, i))
        assert all((x + y) % 2 == 1 for x, y in zigzag_cols(n, i))
        assert len({king_index(x, y, n) for x, y in zigzag_rows(n, i)}) == 2 * n
