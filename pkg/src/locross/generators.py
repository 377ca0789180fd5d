"""Instance families: 3-D grids, random regular graphs, grid blow-ups of 4-regular graphs.

Coordinate conventions are row-major so tests can address vertices by position.
"""

from __future__ import annotations

import random
from itertools import combinations

from .graph import Graph, GraphError

REGULAR_RETRIES = 1000


def grid_index(x: int, y: int, z: int, q: int, r: int) -> int:
    """Id of vertex ``(x, y, z)`` (0-based) in ``grid3(p, q, r)``."""
    return (x * q + y) * r + z


def grid3(p: int, q: int, r: int) -> Graph:
    """The p x q x r grid graph; vertex ``(x, y, z)`` has id ``(x*q + y)*r + z``."""
    if min(p, q, r) < 1:
        raise GraphError("grid dimensions must be positive")
    edges = []
    for x in range(p):
        for y in range(q):
            for z in range(r):
                v = grid_index(x, y, z, q, r)
                if x + 1 < p:
                    edges.append((v, grid_index(x + 1, y, z, q, r)))
                if y + 1 < q:
                    edges.append((v, grid_index(x, y + 1, z, q, r)))
                if z + 1 < r:
                    edges.append((v, grid_index(x, y, z + 1, q, r)))
    return Graph.from_edges(p * q * r, edges)


def grid2(a: int, b: int) -> Graph:
    """The a x b grid; vertex ``(x, y)`` has id ``x*b + y``."""
    return grid3(a, b, 1)


def random_regular(k: int, n: int, seed: int | None = None) -> Graph:
    """Random simple k-regular graph on n vertices.

    Configuration-model pairing where a pairing step that would create a loop
    or a repeated edge is rejected and redrawn; a pairing that gets stuck is
    restarted, at most ``REGULAR_RETRIES`` times.
    """
    if k < 3:
        raise GraphError("degree must be at least 3")
    if n < k + 1:
        raise GraphError(f"need n >= k+1, got n={n}, k={k}")
    if (k * n) % 2:
        raise GraphError("k*n must be even")
    rng = random.Random(seed)
    for _ in range(REGULAR_RETRIES):
        edges = _pair_stubs(k, n, rng)
        if edges is not None:
            return Graph.from_edges(n, edges)
    raise GraphError(f"pairing failed after {REGULAR_RETRIES} retries")


def _pair_stubs(k: int, n: int, rng: random.Random) -> set[tuple[int, int]] | None:
    stubs = [v for v in range(n) for _ in range(k)]
    edges: set[tuple[int, int]] = set()
    misses = 0
    while stubs:
        i = rng.randrange(len(stubs))
        j = rng.randrange(len(stubs))
        u, v = stubs[i], stubs[j]
        key = (min(u, v), max(u, v))
        if i == j or u == v or key in edges:
            misses += 1
            if misses > 4 * len(stubs) + 20:
                if not _pairable(stubs, edges):
                    return None
                misses = 0
            continue
        misses = 0
        edges.add(key)
        for idx in sorted((i, j), reverse=True):
            stubs[idx] = stubs[-1]
            stubs.pop()
    return edges


def _pairable(stubs: list[int], edges: set[tuple[int, int]]) -> bool:
    for u, v in combinations(sorted(set(stubs)), 2):
        if (u, v) not in edges:
            return True
    return False


# side s of a q x q block: 0: x=0, 1: x=q-1, 2: y=0, 3: y=q-1
def _side_cell(side: int, t: int, q: int) -> tuple[int, int]:
    if side == 0:
        return 0, t
    if side == 1:
        return q - 1, t
    if side == 2:
        return t, 0
    return t, q - 1


def expander_blowup_gk(h: Graph, q: int, r: int) -> Graph:
    """Replace each vertex of ``h`` by a q x q x r grid and each edge by a q*r matching.

    Block of host vertex ``v`` occupies ids ``v*q*q*r + grid_index(x, y, z, q, r)``.
    The i-th neighbour of ``v`` (sorted by id) is attached through side ``i`` of
    its block, matched position-for-position, so the two blocks of every host
    edge together form a 2q x q x r grid.
    """
    if q < 2 * r or r < 1:
        raise GraphError(f"need q >= 2r >= 2, got q={q}, r={r}")
    for v in range(h.n):
        if h.degree(v) > 4:
            raise GraphError(f"side capacity exceeded: host vertex {v} has degree {h.degree(v)} > 4")
    size = q * q * r
    edges = []
    for v in range(h.n):
        base = v * size
        for x in range(q):
            for y in range(q):
                for z in range(r):
                    a = base + grid_index(x, y, z, q, r)
                    if x + 1 < q:
                        edges.append((a, base + grid_index(x + 1, y, z, q, r)))
                    if y + 1 < q:
                        edges.append((a, base + grid_index(x, y + 1, z, q, r)))
                    if z + 1 < r:
                        edges.append((a, base + grid_index(x, y, z + 1, q, r)))
    side_of = {(v, w): i for v in range(h.n) for i, w in enumerate(h.adj[v])}
    for v, w in h.sorted_edges():
        sv, sw = side_of[v, w], side_of[w, v]
        for t in range(q):
            xv, yv = _side_cell(sv, t, q)
            xw, yw = _side_cell(sw, t, q)
            for z in range(r):
                edges.append((v * size + grid_index(xv, yv, z, q, r), w * size + grid_index(xw, yw, z, q, r)))
    return Graph.from_edges(h.n * size, edges)
