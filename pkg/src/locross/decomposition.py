"""Tree, path and layered tree decompositions; validation, flattening, separators, pathwidth."""

from __future__ import annotations

import logging
import math
from collections import Counter, deque
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .graph import Graph, Layering

log = logging.getLogger(__name__)


class DecompositionError(ValueError):
    pass


class ProviderContractError(DecompositionError):
    """A tree-decomposition provider returned something wider than it promised."""

    def __init__(self, message: str, subgraph: Graph, labels: tuple[int, ...]):
        super().__init__(message)
        self.subgraph = subgraph
        self.labels = labels


@dataclass(frozen=True)
class TreeDecomposition:
    tree: Graph
    bags: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, bags: Sequence[Iterable[int]], tree_edges: Iterable[Sequence[int]] = ()) -> TreeDecomposition:
        return cls(Graph.from_edges(len(bags), tree_edges), tuple(frozenset(b) for b in bags))

    @classmethod
    def single(cls, vertices: Iterable[int]) -> TreeDecomposition:
        return cls.of([vertices])

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


@dataclass(frozen=True)
class LayeredTreeDecomposition:
    td: TreeDecomposition
    layering: Layering
    layered_width: int


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def as_tree(self) -> TreeDecomposition:
        return TreeDecomposition.of(self.bags, [(i, i + 1) for i in range(len(self.bags) - 1)])


def width(td: TreeDecomposition | PathDecomposition) -> int:
    return td.width


def layered_width(g: Graph, td: TreeDecomposition, layering: Layering) -> int:
    """Largest number of vertices any bag shares with any layer."""
    problem = layering.violation(g)
    if problem:
        raise DecompositionError(f"layering: {problem}")
    idx = [0] * g.n
    for v, i in layering.index.items():
        idx[v] = i
    best = 0
    for bag in td.bags:
        if bag:
            best = max(best, max(Counter(map(idx.__getitem__, bag)).values()))
    return best


def validate_td(g: Graph, td: TreeDecomposition | PathDecomposition, layering: Layering | None = None) -> str | None:
    """Return None if ``td`` is a tree decomposition of ``g``, else the first violation."""
    if isinstance(td, PathDecomposition):
        td = td.as_tree()
    nodes = len(td.bags)
    if td.tree.n != nodes:
        return f"tree has {td.tree.n} nodes but {nodes} bags"
    if nodes and (td.tree.m != nodes - 1 or not td.tree.is_connected()):
        return "decomposition tree is not a tree"
    where: list[list[int]] = [[] for _ in range(g.n)]
    for x, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                return f"bag {x} contains non-vertex {v}"
            where[v].append(x)
    for v in range(g.n):
        if not where[v]:
            return f"vertex {v} in no bag"
    for u, v in sorted(g.edges):
        a, b = (u, v) if len(where[u]) <= len(where[v]) else (v, u)
        if not any(b in td.bags[x] for x in where[a]):
            return f"edge {u}{v} uncovered"
    inner = [0] * g.n
    for x, y in td.tree.edges:
        for v in td.bags[x] & td.bags[y]:
            inner[v] += 1
    for v in range(g.n):
        if inner[v] != len(where[v]) - 1:
            return f"vertex {v} subtree disconnected"
    if layering is not None:
        problem = layering.violation(g)
        if problem:
            return f"layering edge violation: {problem}"
    return None


def require_valid(g: Graph, td: TreeDecomposition | PathDecomposition, layering: Layering | None = None) -> None:
    problem = validate_td(g, td, layering)
    if problem:
        raise DecompositionError(problem)


def join_decompositions(parts: Sequence[TreeDecomposition], bridge: bool = True) -> TreeDecomposition:
    """Disjoint union of decompositions linked through an empty bridge bag."""
    parts = [p for p in parts if p.bags]
    if len(parts) == 1:
        return parts[0]
    bags: list[frozenset[int]] = [frozenset()] if bridge else []
    edges: list[tuple[int, int]] = []
    prev_root = None
    for p in parts:
        off = len(bags)
        bags.extend(p.bags)
        edges.extend((off + x, off + y) for x, y in p.tree.edges)
        if bridge:
            edges.append((0, off))
        elif prev_root is not None:
            edges.append((prev_root, off))
        prev_root = off
    return TreeDecomposition.of(bags, edges)


# -- elimination orderings ----------------------------------------------------


def td_from_elimination_order(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Tree decomposition whose bags are ``{v} + later neighbours in the fill-in graph``."""
    if sorted(order) != list(range(g.n)):
        raise DecompositionError("elimination order must be a permutation of the vertices")
    pos = {v: i for i, v in enumerate(order)}
    nbrs = [set(a) for a in g.adj]
    bags = []
    later_sets = []
    for v in order:
        later = {w for w in nbrs[v] if pos[w] > pos[v]}
        for a in later:
            nbrs[a] |= later - {a}
        later_sets.append(later)
        bags.append(frozenset(later | {v}))
    edges = []
    roots = []
    for i, later in enumerate(later_sets):
        if later:
            edges.append((i, min(pos[w] for w in later)))
        else:
            roots.append(i)
    edges.extend((roots[0], r) for r in roots[1:])
    return TreeDecomposition.of(bags, edges)


# -- flattening a layered decomposition --------------------------------------


def flatten_bound(k: int, n: int) -> float:
    return 2 * math.sqrt(k * n) - 1


def _block_plan(layer_count: int, block: int, offset: int) -> list[int | None]:
    """Strip id per layer, None for deleted layers (index = offset mod block)."""
    plan: list[int | None] = []
    for j in range(layer_count):
        if j % block == offset % block:
            plan.append(None)
        else:
            plan.append((j - offset - 1) // block + 1 if j > offset else 0)
    return plan


def flatten_layered(g: Graph, ltd: LayeredTreeDecomposition) -> TreeDecomposition:
    """Tree decomposition of width at most ``2*sqrt(k*n) - 1`` from a layered one.

    Delete every layer whose index is congruent to ``offset`` mod ``block``;
    the remaining strips of fewer than ``block`` consecutive layers are
    separated, each inherits the restricted decomposition, and the deleted
    layers are added to every bag. ``block`` ranges around
    ``ceil(sqrt(n/k))`` and all offsets are tried; the narrowest wins.
    """
    require_valid(g, ltd.td, ltd.layering)
    if g.n == 0:
        return TreeDecomposition(Graph(0), ())
    k = max(1, layered_width(g, ltd.td, ltd.layering))
    layers = ltd.layering.layers
    t = len(layers)
    idx = ltd.layering.index
    per_bag = [Counter(idx[v] for v in bag) for bag in ltd.td.bags]
    layer_sizes = [len(L) for L in layers]

    star = math.isqrt(-(-g.n // k))
    while star * star * k < g.n:
        star += 1
    star = max(1, star)
    best = None
    for block in range(max(1, star - 2), star + 3):
        for offset in range(min(block, max(t, 1))):
            plan = _block_plan(t, block, offset)
            deleted = sum(size for size, s in zip(layer_sizes, plan) if s is None)
            widest = 0
            for counts in per_bag:
                strip_totals: Counter[int] = Counter()
                for j, c in counts.items():
                    if plan[j] is not None:
                        strip_totals[plan[j]] += c
                if strip_totals:
                    widest = max(widest, max(strip_totals.values()))
            key = (deleted + widest - 1, block, offset)
            if best is None or key < best:
                best = key
    _, block, offset = best
    plan = _block_plan(t, block, offset)
    removed = frozenset(v for j, L in enumerate(layers) if plan[j] is None for v in L)

    strips: dict[int, list[int]] = {}
    for j, s in enumerate(plan):
        if s is not None and layers[j]:
            strips.setdefault(s, []).append(j)
    parts = []
    for s in sorted(strips):
        members = frozenset(v for j in strips[s] for v in layers[j])
        parts.append(_restrict(ltd.td, members))
    if not parts:
        return TreeDecomposition.single(removed)
    joined = join_decompositions(parts, bridge=False)
    return TreeDecomposition(joined.tree, tuple(b | removed for b in joined.bags))


def _restrict(td: TreeDecomposition, keep: frozenset[int]) -> TreeDecomposition:
    """Restrict bags to ``keep``, drop emptied nodes and reconnect the forest into a tree."""
    kept = [x for x, b in enumerate(td.bags) if b & keep]
    new_id = {x: i for i, x in enumerate(kept)}
    edges = [(new_id[x], new_id[y]) for x, y in td.tree.edges if x in new_id and y in new_id]
    forest = Graph.from_edges(len(kept), edges)
    comps = forest.components()
    edges.extend((comps[0][0], c[0]) for c in comps[1:])
    return TreeDecomposition.of([td.bags[x] & keep for x in kept], edges)


# -- separators ----------------------------------------------------------------


def separator_from_td(g: Graph, td: TreeDecomposition) -> frozenset[int]:
    """A bag whose removal leaves components of at most n/2 vertices.

    Walks from node 0 towards the subtree holding the unique too-large component.
    """
    require_valid(g, td)
    if not td.bags:
        return frozenset()
    where: dict[int, list[int]] = {}
    for x, bag in enumerate(td.bags):
        for v in bag:
            where.setdefault(v, []).append(x)
    x = 0
    visited = set()
    while True:
        visited.add(x)
        bag = td.bags[x]
        big = [c for c in g.components(bag) if 2 * len(c) > g.n]
        if not big:
            return bag
        target = set(where[big[0][0]])
        step = _first_step_towards(td.tree, x, target)
        if step in visited:
            raise DecompositionError("separator walk revisited a node; decomposition is inconsistent")
        x = step


def _first_step_towards(tree: Graph, src: int, targets: set[int]) -> int:
    first = {src: src}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u in targets:
            return first[u]
        for w in tree.adj[u]:
            if w not in first:
                first[w] = w if u == src else first[u]
                queue.append(w)
    raise DecompositionError("target bag not reachable in decomposition tree")


# -- pathwidth recursion -----------------------------------------------------

SHRINK = 1 - math.sqrt(2 / 3)
MIN_CONSTANT = 1 / SHRINK

Provider = Callable[[Graph, tuple[int, ...]], TreeDecomposition]


def pathwidth_constants(c: float) -> tuple[float, float]:
    """(effective c, c') where c is raised to at least 1/(1 - sqrt(2/3)) and c' = c/(1 - sqrt(2/3))."""
    c_eff = max(c, MIN_CONSTANT)
    return c_eff, c_eff / SHRINK


def pathwidth_decomposition(g: Graph, provider: Provider, c: float) -> PathDecomposition:
    """Path decomposition built by recursive balanced separation.

    ``provider(sub, labels)`` must return a tree decomposition of the induced
    subgraph ``sub`` (vertex ``i`` of ``sub`` is ``labels[i]`` of ``g``) of width
    at most ``c*sqrt(|sub|) - 1``. A separating bag is taken from it, the
    remaining components are merged into two groups of at most 2/3 of the
    vertices, both are solved recursively, and the separator is added to all
    their bags.
    """
    c_eff, _ = pathwidth_constants(c)
    if c_eff != c:
        log.info("pathwidth constant raised from %.4f to %.4f", c, c_eff)

    def solve(vertices: tuple[int, ...]) -> list[frozenset[int]]:
        if not vertices:
            return []
        if len(vertices) == 1:
            return [frozenset(vertices)]
        sub, labels = g.induced(vertices)
        td = provider(sub, labels)
        problem = validate_td(sub, td)
        if problem:
            raise ProviderContractError(f"provider returned an invalid decomposition: {problem}", sub, labels)
        limit = c * math.sqrt(sub.n) - 1
        if td.width > limit + 1e-9:
            raise ProviderContractError(
                f"provider width {td.width} exceeds {c:.4f}*sqrt({sub.n})-1 = {limit:.3f}", sub, labels
            )
        sep_local = separator_from_td(sub, td)
        sep = frozenset(labels[i] for i in sep_local)
        groups = [[labels[i] for i in comp] for comp in sub.components(sep_local)]
        while len(groups) >= 3:
            groups.sort(key=lambda grp: (len(grp), min(grp)))
            merged = groups[0] + groups[1]
            groups = [merged] + groups[2:]
        groups.sort(key=min)
        while len(groups) < 2:
            groups.append([])
        left = solve(tuple(sorted(groups[0])))
        right = solve(tuple(sorted(groups[1])))
        return [b | sep for b in left] + [sep] + [b | sep for b in right]

    return PathDecomposition(tuple(solve(tuple(range(g.n)))))


# -- JSON -----------------------------------------------------------------------


def td_to_json(td: TreeDecomposition | PathDecomposition, layering: Layering | None = None) -> dict:
    if isinstance(td, PathDecomposition):
        td = td.as_tree()
    out: dict = {
        "nodes": [{"id": x, "bag": sorted(b)} for x, b in enumerate(td.bags)],
        "edges": [list(e) for e in td.tree.sorted_edges()],
    }
    if layering is not None:
        out["layering"] = layering.to_json()
    return out


def td_from_json(data: Mapping) -> tuple[TreeDecomposition, Layering | None]:
    nodes = sorted(data["nodes"], key=lambda node: node["id"])
    if [node["id"] for node in nodes] != list(range(len(nodes))):
        raise DecompositionError("node ids must be 0..N-1")
    td = TreeDecomposition.of([node["bag"] for node in nodes], data.get("edges", []))
    layering = Layering.of(data["layering"]) if data.get("layering") is not None else None
    return td, layering
