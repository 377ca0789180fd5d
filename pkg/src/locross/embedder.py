"""Host graphs for drawings with few crossings per edge on a surface with few handles.

Vertices of G become leaves hanging off an expander ``Q`` through a
load-balanced bipartite graph; each edge of G is routed through ``Q``. The
surface replaces each host vertex by a punctured sphere and each host edge by a
tube, so its handle count is the cyclomatic number of the host.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .generators import random_regular
from .graph import Graph, GraphError, cyclomatic_number

Edge = tuple[int, int]

MAX_Q_DEGREE = 8
REROUTE_SWEEPS = 3
LENGTH_CALIBRATION = 3
CONGESTION_CALIBRATION = 8
TARGET_DP_LIMIT = 4_000_000


class HostError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledBipartite:
    """Left vertices ``0..n-1``, right ``0..q-1``; ``edges`` are ``(left, right, label)`` in creation order."""

    n: int
    q: int
    edges: tuple[tuple[int, int, int], ...]
    targets: tuple[int, ...]

    @property
    def left_sums(self) -> list[int]:
        out = [0] * self.n
        for i, _, lab in self.edges:
            out[i] += lab
        return out

    @property
    def right_sums(self) -> list[int]:
        out = [0] * self.q
        for _, j, lab in self.edges:
            out[j] += lab
        return out


def _place_targets(degrees: Sequence[int], q: int) -> tuple[int, ...]:
    """Floor/ceiling right targets placed so few right prefix sums hit a left prefix sum.

    Every such coincidence finishes a left and a right vertex in the same
    greedy step and costs one bipartite edge. A DP over (position, ceilings
    used) minimises them; ties put ceilings as early as possible.
    """
    total = sum(degrees)
    base, extra = divmod(total, q)
    if extra == 0 or q * extra > TARGET_DP_LIMIT:
        return tuple(base + 1 if j < extra else base for j in range(q))
    left_cuts: set[int] = set()
    acc = 0
    for d in degrees[:-1]:
        acc += d
        left_cuts.add(acc)

    def hit(j: int, c: int) -> int:
        return 1 if 0 < j < q and j * base + c in left_cuts else 0

    # cost[c] = fewest hits over positions j+1..q given c ceilings among the first j
    cost = [0 if c == extra else math.inf for c in range(extra + 1)]
    table = [cost]
    for j in range(q - 1, -1, -1):
        nxt = table[-1]
        cost = [math.inf] * (extra + 1)
        for c in range(max(0, extra - (q - j)), min(j, extra) + 1):
            best = nxt[c] + hit(j + 1, c) if c <= extra else math.inf
            if c < extra:
                best = min(best, nxt[c + 1] + hit(j + 1, c + 1))
            cost[c] = best
        table.append(cost)
    table.reverse()  # table[j][c]
    targets, c = [], 0
    for j in range(q):
        if c < extra and table[j + 1][c + 1] + hit(j + 1, c + 1) <= table[j + 1][c] + hit(j + 1, c):
            targets.append(base + 1)
            c += 1
        else:
            targets.append(base)
    return tuple(targets)


def load_balance(degrees: Sequence[int], q: int) -> LabeledBipartite:
    """Greedy labelled bipartite graph with left sums ``degrees`` and right sums differing by at most 1.

    Right targets are floor or ceiling of the mean (see ``_place_targets``).
    Each step joins the first unfinished left and right vertices with the
    largest label either can still take.
    """
    if q < 1:
        raise GraphError("q must be positive")
    if any(d < 1 for d in degrees):
        raise GraphError("degrees must be positive")
    targets = _place_targets(degrees, q)
    need_right = list(targets)
    edges = []
    j = 0
    for i, d in enumerate(degrees):
        need = d
        while need:
            while need_right[j] == 0:
                j += 1
            label = min(need, need_right[j])
            edges.append((i, j, label))
            need -= label
            need_right[j] -= label
    return LabeledBipartite(len(degrees), q, tuple(edges), targets)


def choose_q(g: int, c_struct: Fraction | int = 3) -> int:
    """Largest ``q >= 1`` with ``c_struct * q <= g``."""
    if g < 1:
        raise GraphError("genus budget must be at least 1")
    return max(1, math.floor(Fraction(g) / Fraction(c_struct)))


def default_expander(q: int, seed: int | None = None) -> Graph:
    """6-regular random graph on ``q`` vertices, or ``K_q`` when ``q`` is too small for one."""
    return random_regular(6, q, seed) if q >= 7 else Graph.complete(q)


@dataclass(frozen=True)
class HostMapping:
    """Host vertex ``v < n`` is the image of G-vertex ``v``; host vertex ``n + j`` is Q-vertex ``j``."""

    g: Graph
    q_graph: Graph
    host: Graph
    bipartite: LabeledBipartite
    left_vertices: tuple[int, ...]
    routes: Mapping[Edge, tuple[int, ...]]
    assignment: Mapping[Edge, tuple[Edge, Edge]]
    seed: int | None = None
    loads: tuple[int, ...] = field(default=())

    @property
    def q(self) -> int:
        return self.q_graph.n

    def image(self, v: int) -> int:
        return v

    def q_vertex(self, j: int) -> int:
        return self.g.n + j


def _route_loads(n: int, q: int, routes: Mapping[Edge, Sequence[int]]) -> list[int]:
    loads = [0] * q
    for path in routes.values():
        for x in path[1:-1]:
            loads[x - n] += 1
    return loads


def build_host(g: Graph, q_graph: Graph, seed: int | None = None) -> HostMapping:
    """Attach G to a copy of ``q_graph`` via ``load_balance`` and route every edge through it.

    Each vertex spreads its edges over its bipartite edges in proportion to the
    labels (slot order shuffled by ``seed``). Routes are shortest paths in the
    Q-copy under vertex cost ``2 ** (load / tau)``, ``tau = max(1, m / (4q))``,
    followed by ``REROUTE_SWEEPS`` rip-up-and-reroute passes.
    """
    q = q_graph.n
    if q < 1:
        raise HostError("Q must have at least one vertex")
    if not q_graph.is_connected():
        raise HostError("Q must be connected")
    worst = max((q_graph.degree(v) for v in range(q)), default=0)
    if worst > MAX_Q_DEGREE:
        raise HostError(f"Q has degree {worst} > {MAX_Q_DEGREE}")
    n = g.n
    left = tuple(v for v in range(n) if g.degree(v) > 0)
    lb = load_balance([g.degree(v) for v in left], q) if left else LabeledBipartite(0, q, (), tuple([0] * q))
    host_edges = [(n + a, n + b) for a, b in q_graph.edges]
    host_edges += [(left[i], n + j) for i, j, _ in lb.edges]
    host = Graph.from_edges(n + q, host_edges)

    rng = random.Random(seed)
    slots: dict[int, list[int]] = {}
    for i, j, label in lb.edges:
        slots.setdefault(left[i], []).extend([n + j] * label)
    for v in left:
        rng.shuffle(slots[v])
    cursor = {v: 0 for v in left}
    assignment: dict[Edge, tuple[Edge, Edge]] = {}
    for u, v in g.sorted_edges():
        wu = slots[u][cursor[u]]
        wv = slots[v][cursor[v]]
        cursor[u] += 1
        cursor[v] += 1
        assignment[(u, v)] = ((u, wu), (v, wv))

    tau = max(1.0, g.m / (4 * q))
    loads = [0] * q
    q_adj = q_graph.adj

    def shortest(src: int, dst: int) -> list[int]:
        cost = [2.0 ** min(load / tau, 1000.0) for load in loads]
        dist = [math.inf] * q
        prev = [-1] * q
        dist[src] = cost[src]
        heap = [(dist[src], src)]
        while heap:
            du, u = heapq.heappop(heap)
            if du > dist[u]:
                continue
            if u == dst:
                break
            for w in q_adj[u]:
                alt = du + cost[w]
                if alt < dist[w] or (alt == dist[w] and u < prev[w]):
                    dist[w] = alt
                    prev[w] = u
                    heapq.heappush(heap, (alt, w))
        path = [dst]
        while path[-1] != src:
            path.append(prev[path[-1]])
        return path[::-1]

    inner: dict[Edge, list[int]] = {}
    order = g.sorted_edges()
    for sweep in range(REROUTE_SWEEPS + 1):
        for e in order:
            if sweep:
                for x in inner[e]:
                    loads[x] -= 1
            (_, wu), (_, wv) = assignment[e]
            inner[e] = shortest(wu - n, wv - n)
            for x in inner[e]:
                loads[x] += 1
    routes = {e: (e[0], *[n + x for x in inner[e]], e[1]) for e in order}
    return HostMapping(g, q_graph, host, lb, left, routes, assignment, seed, tuple(loads))


def host_violation(hm: HostMapping, genus_budget: int | None = None) -> str | None:
    """Independent re-check of every host invariant; first failure or None."""
    g, n, q = hm.g, hm.g.n, hm.q
    host = hm.host
    if host.n != n + q:
        return f"host has {host.n} vertices, expected {n + q}"
    q_part, _ = host.induced(range(n, n + q))
    if q_part != hm.q_graph:
        return "non-image vertices do not induce Q"
    for a, b in host.edges:
        if a < n and b < n:
            return f"host edge {a}{b} joins two images"
    lb = hm.bipartite
    if lb.left_sums != [g.degree(v) for v in hm.left_vertices]:
        return "bipartite left sums differ from the degree sequence"
    rs = lb.right_sums
    if rs and max(rs) - min(rs) > 1:
        return f"bipartite right sums spread {min(rs)}..{max(rs)}"
    if len(lb.edges) > lb.n + lb.q - 1 and lb.edges:
        return f"{len(lb.edges)} bipartite edges exceed n + q - 1"
    if any(lab < 1 for _, _, lab in lb.edges):
        return "non-positive label"
    label_of = {(hm.left_vertices[i], n + j): lab for i, j, lab in lb.edges}
    used: dict[Edge, int] = {}
    if set(hm.routes) != set(g.edges):
        return "routes do not cover exactly the edges of G"
    for (u, v), path in hm.routes.items():
        if path[0] != u or path[-1] != v:
            return f"route of {u}{v} does not join its endpoint images"
        for a, b in zip(path, path[1:]):
            if not host.has_edge(a, b):
                return f"route of {u}{v} uses non-host edge {a}{b}"
        if any(x < n for x in path[1:-1]):
            return f"route of {u}{v} passes through another image"
        for end, hop in ((u, path[1]), (v, path[-2])):
            used[(end, hop)] = used.get((end, hop), 0) + 1
    if used != label_of:
        bad = sorted(set(used) ^ set(label_of)) or sorted(k for k in used if used[k] != label_of[k])
        return f"assignment counts differ from labels at {bad[0]}"
    if genus_budget is not None and cyclomatic_number(host) > genus_budget:
        return f"cyclomatic number {cyclomatic_number(host)} exceeds budget {genus_budget}"
    return None


@dataclass(frozen=True)
class SurfaceReport:
    q: int
    genus: int
    q_cyclomatic: int
    bipartite_edges: int
    crossing_bounds: Mapping[Edge, int]
    loads: tuple[int, ...]
    max_route_len: int
    max_congestion: int
    max_crossings_per_edge: int
    bound_m_log2q_sq_over_q: float

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "genus": self.genus,
            "q_cyclomatic": self.q_cyclomatic,
            "bipartite_edges": self.bipartite_edges,
            "max_route_len": self.max_route_len,
            "max_congestion": self.max_congestion,
            "max_crossings_per_edge": self.max_crossings_per_edge,
            "bound_m_log2q_sq_over_q": self.bound_m_log2q_sq_over_q,
        }


def log2_ceil(q: int) -> int:
    return max(1, math.ceil(math.log2(q))) if q > 1 else 1


def crossing_report(hm: HostMapping) -> SurfaceReport:
    """Per-edge crossing upper bounds from sphere loads, plus the handle count."""
    n, q = hm.g.n, hm.q
    loads = _route_loads(n, q, hm.routes)
    bounds = {e: sum(loads[x - n] - 1 for x in path[1:-1]) for e, path in hm.routes.items()}
    m = hm.g.m
    return SurfaceReport(
        q=q,
        genus=cyclomatic_number(hm.host),
        q_cyclomatic=cyclomatic_number(hm.q_graph),
        bipartite_edges=len(hm.bipartite.edges),
        crossing_bounds=bounds,
        loads=tuple(loads),
        max_route_len=max((len(p) - 1 for p in hm.routes.values()), default=0),
        max_congestion=max(loads, default=0),
        max_crossings_per_edge=max(bounds.values(), default=0),
        bound_m_log2q_sq_over_q=m * log2_ceil(q) ** 2 / q,
    )


def embed(g: Graph, genus_budget: int, seed: int | None = None) -> tuple[HostMapping, SurfaceReport]:
    """Pick ``q`` for the genus budget, build the host over the default expander and report."""
    q = choose_q(genus_budget)
    hm = build_host(g, default_expander(q, seed), seed)
    return hm, crossing_report(hm)
