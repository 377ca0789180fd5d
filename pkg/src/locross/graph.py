"""Simple undirected graphs on dense integer vertex ids, layerings and BFS."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised when a graph, layering or vertex set violates its invariants."""


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with vertex set ``range(n)``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v``.
    """

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge ({u}, {v}) not normalised or out of range [0, {self.n})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], *, allow_duplicates: bool = False) -> Graph:
        seen: set[tuple[int, int]] = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"self-loop at {u}")
            key = _norm(u, v)
            if key in seen and not allow_duplicates:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(seen))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        if n < 3:
            raise GraphError("a simple cycle needs at least 3 vertices")
        return cls(n, frozenset(_norm(i, (i + 1) % n) for i in range(n)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def adj_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """Induced subgraph relabelled to ``0..k-1``; returns it with the label tuple.

        ``labels[i]`` is the original id of new vertex ``i`` (labels sorted).
        """
        labels = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(labels)}
        sub = frozenset(
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        )
        return Graph(len(labels), sub), labels

    def components(self, removed: Iterable[int] = ()) -> list[list[int]]:
        """Connected components of ``G - removed``, each sorted, ordered by min vertex."""
        gone = set(removed)
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s] or s in gone:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if not seen[w] and w not in gone:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1


@dataclass(frozen=True)
class Layering:
    """Ordered partition of the vertex set into layers."""

    layers: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, layers: Iterable[Iterable[int]]) -> Layering:
        return cls(tuple(frozenset(L) for L in layers))

    def __len__(self) -> int:
        return len(self.layers)

    @cached_property
    def index(self) -> dict[int, int]:
        return {v: i for i, L in enumerate(self.layers) for v in L}

    def violation(self, g: Graph) -> str | None:
        """Return a message for the first broken layering condition, else None."""
        idx: dict[int, int] = {}
        for i, L in enumerate(self.layers):
            for v in L:
                if v in idx:
                    return f"vertex {v} in layers {idx[v]} and {i}"
                idx[v] = i
        missing = [v for v in range(g.n) if v not in idx]
        if missing:
            return f"vertex {missing[0]} in no layer"
        extra = [v for v in idx if not 0 <= v < g.n]
        if extra:
            return f"vertex {extra[0]} not in graph"
        for u, v in sorted(g.edges):
            if abs(idx[u] - idx[v]) > 1:
                return f"edge {u}{v} spans layers {idx[u]} and {idx[v]}"
        return None

    def to_json(self) -> list[list[int]]:
        return [sorted(L) for L in self.layers]


@dataclass(frozen=True)
class BranchSets:
    """Disjoint nonempty vertex sets of a host graph (candidate minor model)."""

    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        seen: dict[int, int] = {}
        for i, s in enumerate(self.sets):
            if not s:
                raise GraphError(f"branch set {i} is empty")
            for v in s:
                if v in seen:
                    raise GraphError(f"vertex {v} in branch sets {seen[v]} and {i}")
                seen[v] = i

    @classmethod
    def of(cls, sets: Iterable[Iterable[int]]) -> BranchSets:
        return cls(tuple(frozenset(s) for s in sets))

    def __len__(self) -> int:
        return len(self.sets)


def bfs_distances(g: Graph, root: int) -> list[int]:
    """Distances from ``root``; -1 marks unreachable vertices."""
    if not 0 <= root < g.n:
        raise GraphError(f"root {root} not in graph")
    dist = [-1] * g.n
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _require_connected(dist: list[int]) -> None:
    for v, d in enumerate(dist):
        if d < 0:
            raise GraphError(f"graph is disconnected: vertex {v} unreachable from root")


def bfs_layering(g: Graph, root: int) -> Layering:
    dist = bfs_distances(g, root)
    _require_connected(dist)
    layers: list[set[int]] = [set() for _ in range(max(dist) + 1)]
    for v, d in enumerate(dist):
        layers[d].add(v)
    return Layering.of(layers)


def bfs_tree(g: Graph, root: int) -> list[int]:
    """Parent array of a BFS tree rooted at ``root`` (``parent[root] == -1``).

    Parents are chosen as the smallest-id neighbour one layer closer to the root.
    """
    dist = bfs_distances(g, root)
    _require_connected(dist)
    parent = [-1] * g.n
    for v in range(g.n):
        if v == root:
            continue
        parent[v] = min(w for w in g.adj[v] if dist[w] == dist[v] - 1)
    return parent


def root_path(parent: Sequence[int], v: int) -> list[int]:
    """Vertices on the tree path from ``v`` up to the root, ``v`` first."""
    path = [v]
    while parent[path[-1]] >= 0:
        path.append(parent[path[-1]])
    return path


def cyclomatic_number(g: Graph) -> int:
    return g.m - g.n + len(g.components())


def subdivide(g: Graph, t: int) -> Graph:
    """Replace every edge by a path with ``t`` internal vertices.

    New vertices for edge number ``i`` (in sorted edge order) get ids
    ``n + i*t .. n + i*t + t - 1``, ordered from the smaller endpoint.
    """
    if t < 0:
        raise GraphError("subdivision count must be non-negative")
    if t == 0:
        return g
    edges = []
    for i, (u, v) in enumerate(g.sorted_edges()):
        chain = [u] + [g.n + i * t + j for j in range(t)] + [v]
        edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(g.n + t * g.m, edges)
