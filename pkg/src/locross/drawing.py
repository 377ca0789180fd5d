"""Drawings with crossings, held as a planarized skeleton plus per-edge routes."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .embedding import RotationSystem
from .generators import grid3, grid_index
from .graph import Graph

Edge = tuple[int, int]


class DrawingError(ValueError):
    pass


@dataclass(frozen=True)
class Drawing:
    """Base graph ``G`` drawn with crossings.

    Skeleton vertices ``0..G.n-1`` are the vertices of ``G``; every further
    skeleton vertex is a crossing, tagged with the two ``G``-edges that cross
    there. ``routes[(u, v)]`` (``u < v``) lists the skeleton vertices met along
    the edge from ``u`` to ``v``.
    """

    base: Graph
    skeleton: RotationSystem
    crossings: Mapping[int, tuple[Edge, Edge]]
    routes: Mapping[Edge, tuple[int, ...]]

    @classmethod
    def crossing_free(cls, rs: RotationSystem) -> Drawing:
        g = rs.graph
        return cls(g, rs, {}, {e: e for e in g.sorted_edges()})

    def to_json(self) -> dict:
        return {
            "base": {"n": self.base.n, "edges": [list(e) for e in self.base.sorted_edges()]},
            "skeleton": self.skeleton.to_json(),
            "crossings": [
                {"vertex": x, "edges": [list(e1), list(e2)]} for x, (e1, e2) in sorted(self.crossings.items())
            ],
            "routes": [{"edge": list(e), "path": list(p)} for e, p in sorted(self.routes.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Drawing:
        base = Graph.from_edges(int(data["base"]["n"]), data["base"]["edges"])
        skeleton = RotationSystem.from_json(data["skeleton"])
        crossings = {
            int(c["vertex"]): (tuple(sorted(c["edges"][0])), tuple(sorted(c["edges"][1])))
            for c in data["crossings"]
        }
        routes = {tuple(sorted(r["edge"])): tuple(int(v) for v in r["path"]) for r in data["routes"]}
        return cls(base, skeleton, crossings, routes)


def drawing_violation(d: Drawing) -> str | None:
    """First broken drawing invariant, or None."""
    n = d.base.n
    sk = d.skeleton.graph
    if set(d.routes) != set(d.base.edges):
        return "routes do not match the base edges"
    if set(d.crossings) != set(range(n, d.skeleton.n)):
        return "crossing vertices must be exactly the skeleton vertices beyond the base"
    on_route: dict[int, list[Edge]] = defaultdict(list)
    for e, path in d.routes.items():
        if path[0] != e[0] or path[-1] != e[1]:
            return f"route of {e} does not run between its endpoints"
        for a, b in zip(path, path[1:]):
            if not sk.has_edge(a, b):
                return f"route of {e} uses non-skeleton edge {a}{b}"
        for x in path[1:-1]:
            if x < n:
                return f"route of {e} passes through base vertex {x}"
            on_route[x].append(e)
    expected_m = sum(len(p) - 1 for p in d.routes.values())
    if d.skeleton.m != expected_m:
        return f"skeleton has {d.skeleton.m} edges, routes use {expected_m}"
    for x, pair in d.crossings.items():
        if sorted(on_route.get(x, [])) != sorted(pair):
            return f"crossing {x} lies on {sorted(on_route.get(x, []))}, tagged {sorted(pair)}"
        if len(d.skeleton.rotation[x]) != 4:
            return f"crossing {x} does not have degree 4"
    return None


def local_crossing_number_of_drawing(d: Drawing) -> int:
    """Maximum number of crossings on one edge of the drawing."""
    return max((len(p) - 2 for p in d.routes.values()), default=0)


@dataclass(frozen=True)
class CrossingInfo:
    edges: tuple[Edge, Edge]
    tails: tuple[int, int]


def planarize(d: Drawing) -> tuple[Graph, dict[int, CrossingInfo]]:
    """Skeleton graph and, per crossing vertex, its two edges and their tails.

    Every base edge ``(u, v)`` is oriented from ``u = min`` to ``v = max``.
    """
    problem = drawing_violation(d)
    if problem:
        raise DrawingError(problem)
    info = {x: CrossingInfo(pair, (pair[0][0], pair[1][0])) for x, pair in d.crossings.items()}
    return d.skeleton.graph, info


def unplanarize(skeleton: Graph, routes: Mapping[Edge, Sequence[int]], n: int) -> Graph:
    """Contract every route back to a single edge between its endpoints."""
    edges = []
    for path in routes.values():
        for a, b in zip(path, path[1:]):
            if not skeleton.has_edge(a, b):
                raise DrawingError(f"route step {a}{b} not in skeleton")
        edges.append((path[0], path[-1]))
    return Graph.from_edges(n, edges)


# -- straight-line drawings -------------------------------------------------


def _orient(a, b, c) -> Fraction:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_open_segment(p, a, b) -> bool:
    if _orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]) and p != a and p != b


def _buckets(segs: list[tuple], cell: Fraction) -> dict[tuple[int, int], list[int]]:
    buckets: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, (a, b) in enumerate(segs):
        x0, x1 = sorted((a[0], b[0]))
        y0, y1 = sorted((a[1], b[1]))
        for cx in range(int(x0 // cell), int(x1 // cell) + 1):
            for cy in range(int(y0 // cell), int(y1 // cell) + 1):
                buckets[cx, cy].append(i)
    return buckets


def _bucket_pairs(buckets: dict[tuple[int, int], list[int]]) -> list[tuple[int, int]]:
    pairs = set()
    for members in buckets.values():
        for s in range(len(members)):
            for t in range(s + 1, len(members)):
                pairs.add((members[s], members[t]))
    return sorted(pairs)


def straight_line_crossings(points: Mapping[int, tuple] | Sequence[tuple], g: Graph) -> Drawing:
    """Drawing of ``g`` with straight edges at ``points``; crossings are proper intersections.

    Exact rational arithmetic throughout. Raises ``DrawingError`` on coinciding
    points, a vertex inside a non-incident edge, overlapping collinear edges,
    or two crossings at the same point of an edge.
    """
    pts = [(Fraction(points[v][0]), Fraction(points[v][1])) for v in range(g.n)]
    where: dict[tuple, int] = {}
    for v, p in enumerate(pts):
        if p in where:
            raise DrawingError(f"vertices {where[p]} and {v} coincide")
        where[p] = v
    edges = g.sorted_edges()
    segs = [(pts[u], pts[v]) for u, v in edges]
    xs = [p[0] for p in pts] or [Fraction(0)]
    ys = [p[1] for p in pts] or [Fraction(0)]
    span = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    lengths = sorted(max(abs(a[0] - b[0]), abs(a[1] - b[1])) for a, b in segs)
    cell = max(lengths[len(lengths) // 2] if lengths else span, span / 64)

    buckets = _buckets(segs, cell)
    for v, p in enumerate(pts):
        for i in buckets.get((int(p[0] // cell), int(p[1] // cell)), ()):
            if v not in edges[i] and _on_open_segment(p, *segs[i]):
                raise DrawingError(f"vertex {v} lies on edge {edges[i]}")

    hits: dict[int, list[tuple[Fraction, int]]] = defaultdict(list)
    crossing_points: list[tuple[tuple[Fraction, Fraction], int, int]] = []
    for i, j in _bucket_pairs(buckets):
        (a, b), (c, d) = segs[i], segs[j]
        if set(edges[i]) & set(edges[j]):
            u = (set(edges[i]) & set(edges[j])).pop()
            other_i = b if pts[u] == a else a
            other_j = d if pts[u] == c else c
            if _orient(pts[u], other_i, other_j) == 0 and (
                (other_i[0] - pts[u][0]) * (other_j[0] - pts[u][0]) + (other_i[1] - pts[u][1]) * (other_j[1] - pts[u][1])
            ) > 0:
                raise DrawingError(f"edges {edges[i]} and {edges[j]} overlap")
            continue
        o1, o2 = _orient(a, b, c), _orient(a, b, d)
        o3, o4 = _orient(c, d, a), _orient(c, d, b)
        if o1 == 0 and o2 == 0:
            if _on_open_segment(c, a, b) or _on_open_segment(d, a, b) or _on_open_segment(a, c, d):
                raise DrawingError(f"edges {edges[i]} and {edges[j]} overlap")
            continue
        if (o1 > 0) != (o2 > 0) and (o3 > 0) != (o4 > 0) and 0 not in (o1, o2, o3, o4):
            t = o3 / (o3 - o4)  # parameter along segment i
            s = o1 / (o1 - o2)  # parameter along segment j
            point = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
            crossing_points.append((point, i, j))
            hits[i].append((t, len(crossing_points) - 1))
            hits[j].append((s, len(crossing_points) - 1))

    n = g.n
    crossings: dict[int, tuple[Edge, Edge]] = {}
    positions = list(pts)
    for k, (point, i, j) in enumerate(crossing_points):
        crossings[n + k] = (edges[i], edges[j])
        positions.append(point)
    routes: dict[Edge, tuple[int, ...]] = {}
    sk_edges = []
    for i, (u, v) in enumerate(edges):
        # segment i runs from pts[u] to pts[v] since u < v
        along = sorted(hits.get(i, []))
        for (t1, _), (t2, _) in zip(along, along[1:]):
            if t1 == t2:
                raise DrawingError(f"edge {(u, v)} has two crossings at one point")
        path = (u, *[n + k for _, k in along], v)
        routes[(u, v)] = path
        sk_edges.extend(zip(path, path[1:]))
    skeleton_graph = Graph.from_edges(n + len(crossing_points), sk_edges)
    skeleton = RotationSystem.from_positions(skeleton_graph, positions)
    return Drawing(g, skeleton, crossings, routes)


def projection_points(p: int, q: int, r: int, dx: Fraction, dy: Fraction) -> list[tuple[Fraction, Fraction]]:
    pts = [None] * (p * q * r)
    for x in range(p):
        for y in range(q):
            for z in range(r):
                pts[grid_index(x, y, z, q, r)] = (x + dx * z, y + dy * z)
    return pts


def grid_projection_drawing(p: int, q: int, r: int) -> Drawing:
    """Drawing of the p x q x r grid by the projection (x, y, z) -> (x + a*z, y + b*z).

    Each layer z is a slightly shifted copy of the plane grid, which leaves at
    most r - 1 crossings on every edge.
    """
    g = grid3(p, q, r)
    attempts = [(Fraction(1, r + 1), Fraction(1, r + 2)), (Fraction(1, r + 2), Fraction(1, r + 3)), (Fraction(2, 2 * r + 3), Fraction(1, r + 5))]
    last: DrawingError | None = None
    for dx, dy in attempts:
        try:
            return straight_line_crossings(projection_points(p, q, r, dx, dy), g)
        except DrawingError as exc:
            last = exc
    raise DrawingError(f"no generic projection found: {last}")
