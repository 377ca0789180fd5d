"""Orientable combinatorial embeddings (rotation systems).

A dart is ``2*e`` (edge ``e`` traversed from ``ends[e][0]`` to ``ends[e][1]``)
or ``2*e + 1`` (reverse). Faces are traced by: arriving at ``v`` along edge
``e``, leave along the edge following ``e`` in the rotation at ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key
from typing import Iterable, Mapping, Sequence

from .graph import Graph


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class RotationSystem:
    """Multigraph (no loops) with a cyclic order of edge ids at every vertex."""

    n: int
    ends: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.rotation) != self.n:
            raise EmbeddingError(f"rotation lists {len(self.rotation)} vertices, expected {self.n}")
        seen: dict[int, list[int]] = {e: [] for e in range(len(self.ends))}
        for v, cyc in enumerate(self.rotation):
            for e in cyc:
                if e not in seen:
                    raise EmbeddingError(f"unknown edge id {e} at vertex {v}")
                seen[e].append(v)
        for e, (a, b) in enumerate(self.ends):
            if a == b:
                raise EmbeddingError(f"edge {e} is a loop")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise EmbeddingError(f"edge {e} has endpoint outside [0, {self.n})")
            if sorted(seen[e]) != sorted((a, b)):
                raise EmbeddingError(f"edge {e} must appear exactly once at each of {a} and {b}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_neighbor_orders(cls, n: int, orders: Sequence[Sequence[int]]) -> RotationSystem:
        """Simple graph given by a cyclic neighbour order per vertex."""
        ids: dict[tuple[int, int], int] = {}
        ends: list[tuple[int, int]] = []
        for v, nbrs in enumerate(orders):
            for w in nbrs:
                key = (min(v, w), max(v, w))
                if key not in ids:
                    ids[key] = len(ends)
                    ends.append(key)
        rotation = tuple(tuple(ids[(min(v, w), max(v, w))] for w in nbrs) for v, nbrs in enumerate(orders))
        return cls(n, tuple(ends), rotation)

    @classmethod
    def from_positions(cls, g: Graph, pos: Mapping[int, tuple] | Sequence[tuple]) -> RotationSystem:
        """Rotation of a straight-line drawing: neighbours sorted counter-clockwise (exact)."""
        orders = []
        for v in range(g.n):
            px, py = Fraction(pos[v][0]), Fraction(pos[v][1])
            dirs = [((Fraction(pos[w][0]) - px, Fraction(pos[w][1]) - py), w) for w in g.adj[v]]
            dirs.sort(key=cmp_to_key(lambda a, b: _ccw_cmp(a[0], b[0])))
            orders.append([w for _, w in dirs])
        return cls.from_neighbor_orders(g.n, orders)

    @classmethod
    def from_text(cls, text: str) -> RotationSystem:
        """Parse lines ``v: e1 e2 ... ek``; edge endpoints are the two vertices listing it."""
        entries: dict[int, list[int]] = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, tail = line.partition(":")
            entries[int(head)] = [int(tok) for tok in tail.split()]
        n = max(entries, default=-1) + 1
        where: dict[int, list[int]] = {}
        for v, cyc in entries.items():
            for e in cyc:
                where.setdefault(e, []).append(v)
        m = max(where, default=-1) + 1
        ends = []
        for e in range(m):
            vs = where.get(e, [])
            if len(vs) != 2:
                raise EmbeddingError(f"edge id {e} listed at {len(vs)} vertices, expected 2")
            ends.append((min(vs), max(vs)))
        return cls(n, tuple(ends), tuple(tuple(entries.get(v, [])) for v in range(n)))

    def to_text(self) -> str:
        return "".join(f"{v}: {' '.join(map(str, cyc))}".rstrip() + "\n" for v, cyc in enumerate(self.rotation))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "edges": [list(e) for e in self.ends],
            "rotation": [list(c) for c in self.rotation],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> RotationSystem:
        return cls(
            int(data["n"]),
            tuple((int(a), int(b)) for a, b in data["edges"]),
            tuple(tuple(int(e) for e in c) for c in data["rotation"]),
        )

    # -- structure --------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.ends)

    @cached_property
    def graph(self) -> Graph:
        """Underlying simple graph (parallel edges collapsed)."""
        return Graph.from_edges(self.n, self.ends, allow_duplicates=True)

    def tail(self, d: int) -> int:
        a, b = self.ends[d >> 1]
        return b if d & 1 else a

    def head(self, d: int) -> int:
        a, b = self.ends[d >> 1]
        return a if d & 1 else b

    def dart_from(self, v: int, e: int) -> int:
        return 2 * e if self.ends[e][0] == v else 2 * e + 1

    @cached_property
    def next_dart(self) -> tuple[int, ...]:
        nxt = [0] * (2 * self.m)
        for v, cyc in enumerate(self.rotation):
            k = len(cyc)
            for i, e in enumerate(cyc):
                incoming = 2 * e + 1 if self.ends[e][0] == v else 2 * e
                nxt[incoming] = self.dart_from(v, cyc[(i + 1) % k])
        return tuple(nxt)

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Faces as dart cycles, in order of their smallest dart."""
        nxt = self.next_dart
        seen = [False] * (2 * self.m)
        out = []
        for start in range(2 * self.m):
            if seen[start]:
                continue
            face = []
            d = start
            while not seen[d]:
                seen[d] = True
                face.append(d)
                d = nxt[d]
            if d != start:
                raise EmbeddingError("face tracing did not close; rotation is inconsistent")
            out.append(tuple(face))
        return tuple(out)

    @cached_property
    def face_of_dart(self) -> tuple[int, ...]:
        out = [0] * (2 * self.m)
        for i, face in enumerate(self.faces):
            for d in face:
                out[d] = i
        return tuple(out)

    def face_vertices(self, face: Sequence[int]) -> list[int]:
        return [self.tail(d) for d in face]

    def face_count(self) -> int:
        return max(1, len(self.faces)) if self.n else 0

    def restrict(self, vertices: Iterable[int]) -> tuple[RotationSystem, tuple[int, ...]]:
        """Sub-embedding induced by ``vertices``, relabelled like ``Graph.induced``."""
        labels = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(labels)}
        keep = [e for e, (a, b) in enumerate(self.ends) if a in index and b in index]
        new_id = {e: i for i, e in enumerate(keep)}
        ends = tuple((index[self.ends[e][0]], index[self.ends[e][1]]) for e in keep)
        rotation = tuple(tuple(new_id[e] for e in self.rotation[v] if e in new_id) for v in labels)
        return RotationSystem(len(labels), ends, rotation), labels


def _ccw_cmp(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> int:
    def half(d):
        return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1

    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    if cross == 0:
        raise EmbeddingError(f"two neighbours in the same direction {a}")
    return -1 if cross > 0 else 1


def trace_faces(rs: RotationSystem) -> list[list[int]]:
    """Faces as vertex cycles (tail of each dart in order)."""
    return [rs.face_vertices(f) for f in rs.faces]


def euler_genus(rs: RotationSystem) -> int:
    """Euler genus ``2 - n + m - f`` of a connected orientable embedding (always even)."""
    if rs.n == 0:
        return 0
    if not rs.graph.is_connected():
        raise EmbeddingError("euler genus needs a connected embedding")
    return 2 - rs.n + rs.m - rs.face_count()


def triangulate(rs: RotationSystem) -> RotationSystem:
    """Add edges inside faces until every face is a triangle.

    Each long face is fanned from (the first corner of) its minimum-id vertex;
    when that would create a loop an ear elsewhere is cut instead. Parallel
    edges may appear, always on distinct faces. Vertex set and genus are kept.
    """
    if rs.n < 3:
        raise EmbeddingError("need at least 3 vertices to triangulate")
    if not rs.graph.is_connected():
        raise EmbeddingError("triangulate needs a connected embedding")
    ends = list(rs.ends)
    rot = [list(c) for c in rs.rotation]

    def tail(d: int) -> int:
        a, b = ends[d >> 1]
        return b if d & 1 else a

    def add_chord(face: list[int], i: int, j: int) -> tuple[list[int], list[int]]:
        # chord from corner i to corner j of face (corner k = tail of face[k])
        a, b = tail(face[i]), tail(face[j])
        e = len(ends)
        ends.append((a, b))
        ra = rot[a]
        ra.insert(ra.index(face[i - 1] >> 1) + 1, e)
        rb = rot[b]
        rb.insert(rb.index(face[j - 1] >> 1) + 1, e)
        x, x_rev = 2 * e, 2 * e + 1
        L = len(face)
        first = [x] + [face[(j + t) % L] for t in range((i - j) % L)]
        second = [x_rev] + [face[(i + t) % L] for t in range((j - i) % L)]
        return first, second

    work = [list(f) for f in rs.faces if len(f) > 3]
    while work:
        face = work.pop()
        if len(face) <= 3:
            continue
        L = len(face)
        verts = [tail(d) for d in face]
        lo = min(verts)
        i = verts.index(lo)
        if verts[(i + 2) % L] == lo:
            i = next(
                (k for k in range(L) if verts[k] != verts[(k + 2) % L]),
                -1,
            )
            if i < 0:
                raise EmbeddingError(f"cannot triangulate degenerate face {verts}")
        j = (i + 2) % L
        first, second = add_chord(face, i, j)
        work.append(first)
        work.append(second)
    return RotationSystem(rs.n, tuple(ends), tuple(tuple(c) for c in rot))


def planar_grid_rotation(a: int, b: int) -> RotationSystem:
    """Plane a x b grid (vertex ``(x, y)`` has id ``x*b + y``)."""
    orders = []
    for x in range(a):
        for y in range(b):
            nbrs = []
            for dx, dy in ((1, 0), (0, 1), (-1, 0), (0, -1)):
                if 0 <= x + dx < a and 0 <= y + dy < b:
                    nbrs.append((x + dx) * b + (y + dy))
            orders.append(nbrs)
    return RotationSystem.from_neighbor_orders(a * b, orders)


def torus_grid_rotation(a: int, b: int) -> RotationSystem:
    """C_a x C_b on the torus with the same rotation (right, up, left, down) everywhere."""
    if a < 3 or b < 3:
        raise EmbeddingError("toroidal grid needs a, b >= 3")
    orders = []
    for x in range(a):
        for y in range(b):
            orders.append([
                ((x + 1) % a) * b + y,
                x * b + (y + 1) % b,
                ((x - 1) % a) * b + y,
                x * b + (y - 1) % b,
            ])
    return RotationSystem.from_neighbor_orders(a * b, orders)


def random_planar_triangulation(n: int, seed: int | None = None, flips: int | None = None) -> RotationSystem:
    """Simple plane triangulation: random stacking into faces followed by random edge flips."""
    import random

    if n < 3:
        raise EmbeddingError("a triangulation needs at least 3 vertices")
    rng = random.Random(seed)
    rot: list[list[int]] = [[1, 2], [2, 0], [0, 1]]

    def succ(v: int, w: int) -> int:
        r = rot[v]
        return r[(r.index(w) + 1) % len(r)]

    for v in range(3, n):
        a = rng.randrange(v)
        b = rng.choice(rot[a])
        c = succ(b, a)  # face a -> b -> c
        rot.append([a, c, b])
        rot[a].insert(rot[a].index(c) + 1, v)
        rot[b].insert(rot[b].index(a) + 1, v)
        rot[c].insert(rot[c].index(b) + 1, v)
    for _ in range(3 * n if flips is None else flips):
        u = rng.randrange(n)
        w = rng.choice(rot[u])
        x, y = succ(w, u), succ(u, w)
        if x == y or len(rot[u]) <= 3 or len(rot[w]) <= 3 or y in rot[x]:
            continue
        rot[x].insert(rot[x].index(w) + 1, y)
        rot[y].insert(rot[y].index(u) + 1, x)
        rot[u].remove(w)
        rot[w].remove(u)
    return RotationSystem.from_neighbor_orders(n, rot)


def delete_edges(rs: RotationSystem, drop: Iterable[int]) -> RotationSystem:
    """Embedding with the given edge ids removed (remaining ids renumbered in order)."""
    gone = set(drop)
    keep = [e for e in range(rs.m) if e not in gone]
    new_id = {e: i for i, e in enumerate(keep)}
    return RotationSystem(
        rs.n,
        tuple(rs.ends[e] for e in keep),
        tuple(tuple(new_id[e] for e in cyc if e in new_id) for cyc in rs.rotation),
    )


def random_connected_subembedding(rs: RotationSystem, fraction: float, seed: int | None = None) -> RotationSystem:
    """Delete about ``fraction`` of the edges in random order, skipping any whose removal disconnects."""
    import random

    rng = random.Random(seed)
    order = list(range(rs.m))
    rng.shuffle(order)
    target = int(fraction * rs.m)
    alive = set(range(rs.m))
    removed = 0
    for e in order:
        if removed >= target:
            break
        alive.discard(e)
        g = Graph.from_edges(rs.n, [rs.ends[f] for f in alive], allow_duplicates=True)
        if g.is_connected():
            removed += 1
        else:
            alive.add(e)
    return delete_edges(rs, set(range(rs.m)) - alive)
