from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import brute_pathwidth, brute_treewidth, graphs
from locross.generators import grid2, grid3
from locross.graph import Graph
from locross.oracles import (
    CapExceeded,
    exact_pathwidth,
    exact_treewidth,
    is_separator,
    largest_component_after,
    min_separator_bruteforce,
    parse_rational,
)


def test_k2_separator():
    assert len(min_separator_bruteforce(Graph.complete(2))) == 1


def test_grid_4x2_separator():
    s = min_separator_bruteforce(grid2(4, 2))
    assert len(s) == 2


def test_grid_4x2x2_separator():
    assert len(min_separator_bruteforce(grid3(4, 2, 2))) >= 2


def test_separator_is_lexicographically_first():
    s = min_separator_bruteforce(Graph.path(5))
    assert s == (2,)


def test_separator_cap():
    with pytest.raises(CapExceeded):
        min_separator_bruteforce(Graph.path(21))


def test_parse_rational():
    assert parse_rational("2/3") == Fraction(2, 3)
    with pytest.raises(ValueError):
        parse_rational("3/2")


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=8))
def test_separator_minimal_by_independent_scan(g):
    eps = Fraction(1, 2)
    s = min_separator_bruteforce(g, eps)
    assert is_separator(g, s, eps)
    for smaller in itertools.combinations(range(g.n), len(s) - 1) if s else ():
        assert largest_component_after(g, smaller) * 2 > g.n


@pytest.mark.parametrize(
    "g,tw",
    [(Graph.path(6), 1), (Graph.complete(4), 3), (grid2(3, 3), 3), (Graph.cycle(5), 2), (Graph(3), 0), (Graph(0), -1)],
)
def test_exact_treewidth_examples(g, tw):
    assert exact_treewidth(g) == tw


def test_exact_pathwidth_examples():
    assert exact_pathwidth(Graph.path(8)) == 1
    assert exact_pathwidth(Graph.complete(5)) == 4
    star_of_paths = Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    assert exact_pathwidth(star_of_paths) == 2


def test_width_cap():
    with pytest.raises(CapExceeded):
        exact_treewidth(Graph.path(13))


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6))
def test_exact_widths_match_permutation_search(g):
    assert exact_treewidth(g) == (brute_treewidth(g) if g.n else -1)
    assert exact_pathwidth(g) == brute_pathwidth(g)
    assert exact_treewidth(g) <= exact_pathwidth(g)


@pytest.mark.parametrize("q,r", [(q, r) for q in range(2, 10) for r in range(1, 4) if q * r <= 18 and q >= 2 * r])
def test_two_dim_grid_separator_floor(q, r):
    assert len(min_separator_bruteforce(grid2(q, r))) >= r
