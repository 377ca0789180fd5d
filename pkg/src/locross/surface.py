"""Layered tree decompositions of embedded graphs and of drawings with crossings.

``planar_ltd`` is the tree-cotree construction: bags are unions of vertical
BFS-tree paths, one bag per face of a triangulation, joined along a spanning
tree of the dual that avoids BFS-tree edges. ``gk_planar_ltd`` runs it on the
planarization of a drawing, then substitutes crossing vertices and coarsens
the layering.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .decomposition import (
    DecompositionError,
    LayeredTreeDecomposition,
    TreeDecomposition,
    flatten_layered,
    join_decompositions,
    layered_width,
    require_valid,
)
from .drawing import Drawing, local_crossing_number_of_drawing, planarize
from .embedding import EmbeddingError, RotationSystem, euler_genus, triangulate
from .graph import Graph, GraphError, Layering, bfs_distances, bfs_layering, bfs_tree


@dataclass(frozen=True)
class SurfaceDecompositionTrace:
    root: int
    genus: int
    parent: tuple[int, ...]
    paths: tuple[frozenset[int], ...]
    triangulation: RotationSystem | None
    tree_edges: frozenset[int]
    dual_tree: frozenset[int]
    leftover: tuple[int, ...]
    bags: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class GkCertificate:
    g: int
    k: int
    bound: int
    achieved_layered_width: int

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "k": self.k,
            "bound": self.bound,
            "achieved_layered_width": self.achieved_layered_width,
        }


def strong_bound(g: int) -> int:
    return 2 * g + 3


def gk_bound(g: int, k: int) -> int:
    return (4 * g + 6) * (k + 1)


def _vertical_paths(parent: list[int], root: int) -> list[frozenset[int]]:
    paths: list[frozenset[int] | None] = [None] * len(parent)
    paths[root] = frozenset([root])
    for v in range(len(parent)):
        chain = []
        u = v
        while paths[u] is None:
            chain.append(u)
            u = parent[u]
        acc = paths[u]
        for w in reversed(chain):
            acc = acc | {w}
            paths[w] = acc
    return paths  # type: ignore[return-value]


def planar_ltd(rs: RotationSystem, root: int = 0) -> tuple[LayeredTreeDecomposition, SurfaceDecompositionTrace]:
    """Layered tree decomposition of width at most ``2g + 3`` w.r.t. the BFS layering from ``root``."""
    g = rs.graph
    if not 0 <= root < rs.n:
        raise GraphError(f"root {root} not in graph")
    if not g.is_connected():
        raise EmbeddingError("planar_ltd needs a connected embedding")
    layering = bfs_layering(g, root)
    parent = bfs_tree(g, root)
    paths = _vertical_paths(parent, root)
    genus = euler_genus(rs)
    if rs.n < 3:
        bag = frozenset(range(rs.n))
        td = TreeDecomposition.single(bag)
        trace = SurfaceDecompositionTrace(
            root, genus, tuple(parent), tuple(paths), None, frozenset(), frozenset(), (), (bag,)
        )
        return LayeredTreeDecomposition(td, layering, layered_width(g, td, layering)), trace

    tri = triangulate(rs)
    first_id: dict[tuple[int, int], int] = {}
    for e in range(rs.m):  # original edges keep their ids in the triangulation
        a, b = rs.ends[e]
        first_id.setdefault((min(a, b), max(a, b)), e)
    tree_edges = frozenset(first_id[min(v, p), max(v, p)] for v, p in enumerate(parent) if p >= 0)

    fod = tri.face_of_dart
    nfaces = len(tri.faces)
    dual_adj: list[list[tuple[int, int]]] = [[] for _ in range(nfaces)]
    for e in range(tri.m):
        if e in tree_edges:
            continue
        f1, f2 = fod[2 * e], fod[2 * e + 1]
        dual_adj[f1].append((f2, e))
        dual_adj[f2].append((f1, e))
    start = fod[tri.dart_from(root, tri.rotation[root][0])]
    seen = [False] * nfaces
    seen[start] = True
    dual_tree: list[int] = []
    tree_links: list[tuple[int, int]] = []
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for h, e in dual_adj[f]:
            if not seen[h]:
                seen[h] = True
                dual_tree.append(e)
                tree_links.append((f, h))
                queue.append(h)
    if not all(seen):
        raise DecompositionError("dual graph without tree edges is disconnected")
    chosen = set(dual_tree) | tree_edges
    leftover = tuple(e for e in range(tri.m) if e not in chosen)
    if len(leftover) != genus:
        raise DecompositionError(f"{len(leftover)} leftover dual edges, genus is {genus}")

    core: frozenset[int] = frozenset()
    for e in leftover:
        a, b = tri.ends[e]
        core |= paths[a] | paths[b]
    bags = []
    for face in tri.faces:
        bag = core
        for d in face:
            bag = bag | paths[tri.tail(d)]
        bags.append(bag)
    td = TreeDecomposition.of(bags, tree_links)
    lw = layered_width(g, td, layering)
    trace = SurfaceDecompositionTrace(
        root, genus, tuple(parent), tuple(paths), tri, tree_edges, frozenset(dual_tree), leftover, tuple(bags)
    )
    return LayeredTreeDecomposition(td, layering, lw), trace


def gk_planar_ltd(d: Drawing, root: int = 0) -> tuple[LayeredTreeDecomposition, GkCertificate]:
    """Layered tree decomposition of the base graph of ``d`` of width at most ``(4g+6)(k+1)``.

    Each component of the planarization is handled separately: decompose it,
    replace every crossing vertex in a bag by the tails of its two edges, and
    merge ``k + 1`` consecutive BFS layers into one. Components are joined
    through an empty bag and their layerings merged index by index.
    """
    skeleton_graph, info = planarize(d)
    n = d.base.n
    k = local_crossing_number_of_drawing(d)
    if n == 0:
        cert = GkCertificate(0, k, gk_bound(0, k), 0)
        return LayeredTreeDecomposition(TreeDecomposition(Graph(0), ()), Layering(()), 0), cert
    if not 0 <= root < n:
        raise GraphError(f"root {root} not in graph")
    parts = []
    merged_layers: list[set[int]] = []
    total_genus = 0
    for comp in skeleton_graph.components():
        sub_rs, labels = d.skeleton.restrict(comp)
        local_root = labels.index(root) if root in comp else 0
        ltd, trace = planar_ltd(sub_rs, local_root)
        total_genus += trace.genus

        def lift(v: int) -> tuple[int, ...]:
            x = labels[v]
            return info[x].tails if x >= n else (x,)

        bags = [frozenset(w for v in bag for w in lift(v)) for bag in ltd.td.bags]
        parts.append(TreeDecomposition(ltd.td.tree, tuple(bags)))
        dist = bfs_distances(sub_rs.graph, local_root)
        for v, dv in enumerate(dist):
            if labels[v] < n:
                group = dv // (k + 1)
                while len(merged_layers) <= group:
                    merged_layers.append(set())
                merged_layers[group].add(labels[v])
    while merged_layers and not merged_layers[-1]:
        merged_layers.pop()
    td = join_decompositions(parts)
    layering = Layering.of(merged_layers)
    require_valid(d.base, td, layering)
    lw = layered_width(d.base, td, layering)
    cert = GkCertificate(total_genus, k, gk_bound(total_genus, k), lw)
    return LayeredTreeDecomposition(td, layering, lw), cert


def flat_planar_provider(rs: RotationSystem):
    """Provider for ``pathwidth_decomposition``: restrict ``rs``, decompose each component, flatten."""
    def provide(sub: Graph, labels: tuple[int, ...]) -> TreeDecomposition:
        piece, _ = rs.restrict(labels)
        parts = []
        for comp in piece.graph.components():
            comp_rs, comp_labels = piece.restrict(comp)
            ltd, _ = planar_ltd(comp_rs, 0)
            flat = flatten_layered(comp_rs.graph, ltd)
            parts.append(TreeDecomposition(flat.tree, tuple(frozenset(comp_labels[v] for v in b) for b in flat.bags)))
        return join_decompositions(parts)

    return provide
