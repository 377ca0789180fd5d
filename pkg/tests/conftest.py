from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import strategies as st

from locross.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def isomorphic(a: Graph, b: Graph) -> bool:
    return nx.is_isomorphic(to_nx(a), to_nx(b))


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8, connected: bool = False) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if connected:
        chosen = set(chosen) | {(draw(st.integers(0, i - 1)), i) for i in range(1, n)}
    return Graph.from_edges(n, chosen)


def brute_treewidth(g: Graph) -> int:
    """Minimum over all elimination orders of the largest later-neighbourhood."""
    best = g.n - 1
    for order in itertools.permutations(range(g.n)):
        nbrs = [set(a) for a in g.adj]
        pos = {v: i for i, v in enumerate(order)}
        worst = 0
        for v in order:
            later = {w for w in nbrs[v] if pos[w] > pos[v]}
            worst = max(worst, len(later))
            for a in later:
                nbrs[a] |= later - {a}
        best = min(best, worst)
    return best


def brute_pathwidth(g: Graph) -> int:
    """Vertex separation number over all orderings."""
    best = g.n
    for order in itertools.permutations(range(g.n)):
        worst = 0
        for i in range(g.n):
            prefix = set(order[: i + 1])
            worst = max(worst, sum(1 for v in prefix if any(w not in prefix for w in g.adj[v])))
        best = min(best, worst)
    return best if g.n else -1


@pytest.fixture
def k4() -> Graph:
    return Graph.complete(4)


def pytest_configure(config):
    config._criteria = {}


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for an acceptance criterion, then assert it."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
        request.config._criteria[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_criteria", {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])
