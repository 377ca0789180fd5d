"""Map graphs as half-squares of embedded bipartite witnesses.

A witness is an embedded bipartite graph ``H`` with classes ``A = 0..|A|-1``
and ``B = |A|..n-1``. The map graph is the half-square on ``A``: two
A-vertices are adjacent when they share a B-neighbour.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .decomposition import LayeredTreeDecomposition, TreeDecomposition, join_decompositions, layered_width, require_valid
from .embedding import RotationSystem, euler_genus
from .graph import Graph, GraphError, Layering
from .surface import planar_ltd

Point = tuple[Fraction, Fraction]

BLOWUP_MIN_Q = 8
BLOWUP_ANALYSIS_Q = 100


class MapWitnessError(ValueError):
    pass


@dataclass(frozen=True)
class MapWitness:
    """Embedded bipartite graph; vertices below ``a_count`` form A, the rest B."""

    rs: RotationSystem
    a_count: int
    d: int

    def __post_init__(self) -> None:
        if not 0 <= self.a_count <= self.rs.n:
            raise MapWitnessError(f"a_count {self.a_count} outside [0, {self.rs.n}]")
        if self.rs.graph.m != self.rs.m:
            raise MapWitnessError("witness must not have parallel edges")
        for a, b in self.rs.ends:
            if (a < self.a_count) == (b < self.a_count):
                raise MapWitnessError(f"edge {a}{b} does not join A to B")
        worst = max((len(self.rs.rotation[w]) for w in self.b_vertices), default=0)
        if worst > self.d:
            raise MapWitnessError(f"B-vertex of degree {worst} exceeds d = {self.d}")

    @classmethod
    def of(cls, rs: RotationSystem, a_count: int, d: int | None = None) -> MapWitness:
        """Witness whose ``d`` defaults to the largest B-degree."""
        if d is None:
            d = max((len(rs.rotation[w]) for w in range(a_count, rs.n)), default=0)
        return cls(rs, a_count, d)

    @property
    def h(self) -> Graph:
        return self.rs.graph

    @property
    def a_vertices(self) -> range:
        return range(self.a_count)

    @property
    def b_vertices(self) -> range:
        return range(self.a_count, self.rs.n)

    def genus(self) -> int:
        return sum(euler_genus(self.rs.restrict(c)[0]) for c in self.h.components())

    def to_json(self) -> dict:
        return {
            "A": list(self.a_vertices),
            "B": list(self.b_vertices),
            "edges": [list(e) for e in self.rs.ends],
            "rotation": {str(v): list(c) for v, c in enumerate(self.rs.rotation)},
            "d": self.d,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> MapWitness:
        a = sorted(int(v) for v in data["A"])
        b = sorted(int(v) for v in data["B"])
        n = len(a) + len(b)
        if a != list(range(len(a))) or b != list(range(len(a), n)):
            raise MapWitnessError("A must be 0..|A|-1 and B must be |A|..n-1")
        rot = data["rotation"]
        rotation = tuple(tuple(int(e) for e in rot.get(str(v), ())) for v in range(n))
        rs = RotationSystem(n, tuple((int(x), int(y)) for x, y in data["edges"]), rotation)
        return cls(rs, len(a), int(data["d"]))


def half_square(h: Graph, a: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """``H^2[A]`` relabelled to ``0..|A|-1`` in sorted order of ``A``; returns it with the labels."""
    labels = tuple(sorted(set(a)))
    side = set(labels)
    for u, v in h.edges:
        if (u in side) == (v in side):
            raise GraphError(f"edge {u}{v} does not cross the bipartition")
    index = {v: i for i, v in enumerate(labels)}
    edges = set()
    for w in range(h.n):
        if w in side:
            continue
        nbrs = sorted(index[x] for x in h.adj[w])
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1:]:
                edges.add((x, y))
    return Graph(len(labels), frozenset(edges)), labels


def witness_graph(w: MapWitness) -> Graph:
    return half_square(w.h, w.a_vertices)[0]


# -- nation structure ------------------------------------------------------


@dataclass(frozen=True)
class NationMap:
    """Graph ``G_0`` on the B-vertices, with a nation per A-vertex and a lake per long face."""

    g0: Graph
    labels: tuple[int, ...]
    nations: tuple[tuple[int, ...], ...]
    lakes: tuple[tuple[int, ...], ...]

    def map_graph(self) -> Graph:
        """Nations adjacent iff their boundaries share a vertex."""
        touching: dict[int, list[int]] = {}
        for i, boundary in enumerate(self.nations):
            for x in set(boundary):
                touching.setdefault(x, []).append(i)
        edges = set()
        for owners in touching.values():
            for s, i in enumerate(owners):
                for j in owners[s + 1:]:
                    edges.add((min(i, j), max(i, j)))
        return Graph(len(self.nations), frozenset(edges))


def witness_to_map(w: MapWitness) -> tuple[NationMap, Graph]:
    """Join B-neighbours that are consecutive around an A-vertex; faces at A become nations."""
    rs = w.rs
    labels = tuple(w.b_vertices)
    local = {b: i for i, b in enumerate(labels)}
    nations = []
    edges = set()
    for v in w.a_vertices:
        ring = [local[rs.head(rs.dart_from(v, e))] for e in rs.rotation[v]]
        nations.append(tuple(ring))
        if len(ring) >= 2:
            for x, y in zip(ring, ring[1:] + ring[:1]):
                if x != y:
                    edges.add((min(x, y), max(x, y)))
    lakes = []
    for face in rs.faces:
        if len(face) >= 6:
            lakes.append(tuple(local[rs.tail(d)] for d in face if rs.tail(d) >= w.a_count))
    nm = NationMap(Graph(len(labels), frozenset(edges)), labels, tuple(nations), tuple(lakes))
    return nm, nm.map_graph()


def witness_from_nations(rs0: RotationSystem, nation_faces: Sequence[int]) -> MapWitness:
    """Witness from an embedded ``G_0`` whose faces ``nation_faces`` (indices into ``rs0.faces``) are nations.

    A-vertex ``i`` is the i-th nation; B-vertex ``len(nation_faces) + v`` is vertex ``v``
    of ``G_0``. Each nation is joined to the vertices on its boundary, in boundary
    order; around a B-vertex the nations follow its corners.
    """
    faces = rs0.faces
    a_count = len(nation_faces)
    which = {f: i for i, f in enumerate(nation_faces)}
    if len(which) != a_count:
        raise MapWitnessError("nation faces must be distinct")
    ends = []
    edge_at: dict[tuple[int, int], int] = {}
    rotation: list[list[int]] = [[] for _ in range(a_count + rs0.n)]
    for i, f in enumerate(nation_faces):
        ring = [rs0.tail(d) for d in faces[f]]
        if len(set(ring)) != len(ring):
            raise MapWitnessError(f"nation face {f} revisits a vertex")
        for v in ring:
            edge_at[i, v] = len(ends)
            rotation[i].append(len(ends))
            ends.append((i, a_count + v))
    fod = rs0.face_of_dart
    for v in range(rs0.n):
        for e in rs0.rotation[v]:
            f = fod[rs0.dart_from(v, e)]
            if f in which:
                rotation[a_count + v].append(edge_at[which[f], v])
        rotation[a_count + v].reverse()  # corners run clockwise relative to the nation rings
    rs = RotationSystem(a_count + rs0.n, tuple(ends), tuple(tuple(c) for c in rotation))
    used = [v for v in range(rs.n) if v < a_count or rotation[v]]
    if len(used) != rs.n:
        rs, _ = rs.restrict(used)
    return MapWitness.of(rs, a_count)


def medial_witness(rs: RotationSystem) -> MapWitness:
    """Witness with one B-vertex per edge (``|V| + e`` for edge id ``e``), so the half-square is ``G``."""
    n = rs.n
    ends = []
    for e, (a, b) in enumerate(rs.ends):
        ends.append((a, n + e))
        ends.append((b, n + e))
    rotation = [tuple(2 * e + (0 if rs.ends[e][0] == v else 1) for e in cyc) for v, cyc in enumerate(rs.rotation)]
    rotation += [(2 * e, 2 * e + 1) for e in range(rs.m)]
    return MapWitness(RotationSystem(n + rs.m, tuple(ends), tuple(rotation)), n, 2)


# -- layered decomposition ---------------------------------------------------


@dataclass(frozen=True)
class MapCertificate:
    g: int
    d: int
    bound: int
    achieved_layered_width: int

    def to_json(self) -> dict:
        return {"g": self.g, "d": self.d, "bound": self.bound, "achieved_layered_width": self.achieved_layered_width}


def map_bound(g: int, d: int) -> int:
    return (2 * g + 3) * (2 * d + 1)


def map_ltd(w: MapWitness, root: int | None = None) -> tuple[LayeredTreeDecomposition, MapCertificate]:
    """Layered tree decomposition of the half-square of width at most ``(2g+3)(2d+1)``.

    Per component of ``H``: BFS from an A-vertex, decompose ``H``, then replace
    every B-vertex in a bag by its neighbourhood. The A-vertices of BFS layer
    ``2i`` form layer ``i`` of the half-square.
    """
    half = witness_graph(w)
    rs = w.rs
    parts = []
    layers: list[set[int]] = []
    total_genus = 0
    for comp in w.h.components():
        a_side = [v for v in comp if v < w.a_count]
        if not a_side:
            continue
        sub, labels = rs.restrict(comp)
        start = root if root is not None and root in comp else a_side[0]
        ltd, trace = planar_ltd(sub, labels.index(start))
        total_genus += trace.genus

        def lift(x: int) -> tuple[int, ...]:
            v = labels[x]
            return (v,) if v < w.a_count else w.h.adj[v]

        bags = [frozenset(u for x in bag for u in lift(x)) for bag in ltd.td.bags]
        parts.append(TreeDecomposition(ltd.td.tree, tuple(bags)))
        for i, layer in enumerate(ltd.layering.layers):
            if i % 2:
                if any(labels[x] < w.a_count for x in layer):
                    raise MapWitnessError("BFS from an A-vertex put an A-vertex on an odd layer")
                continue
            while len(layers) <= i // 2:
                layers.append(set())
            layers[i // 2].update(labels[x] for x in layer)
    td = join_decompositions(parts) if parts else TreeDecomposition(Graph(0), ())
    layering = Layering.of(layers)
    require_valid(half, td, layering)
    lw = layered_width(half, td, layering)
    return LayeredTreeDecomposition(td, layering, lw), MapCertificate(total_genus, w.d, map_bound(total_genus, w.d), lw)


# -- instance families -------------------------------------------------------

SIDES = ("bottom", "right", "top", "left")


def _segment(i: int, j: int, side: int, s: int, r: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Endpoints of segment ``s`` of ``side`` of grid face ``(i, j)``, in counter-clockwise order."""
    x0, y0 = i * r, j * r
    if side == 0:
        return (x0 + s, y0), (x0 + s + 1, y0)
    if side == 1:
        return (x0 + r, y0 + s), (x0 + r, y0 + s + 1)
    if side == 2:
        return (x0 + r - s, y0 + r), (x0 + r - s - 1, y0 + r)
    return (x0, y0 + r - s), (x0, y0 + r - s - 1)


def _center(i: int, j: int, r: int) -> Point:
    return (Fraction(2 * i * r + r, 2), Fraction(2 * j * r + r, 2))


def nation_index(i: int, j: int, side: int, s: int, q: int, r: int) -> int:
    """A-vertex id of the triangle on segment ``s`` of ``side`` in face ``(i, j)``."""
    return ((i * q + j) * 4 + side) * r + s


@dataclass(frozen=True)
class YZInstance:
    witness: MapWitness
    z: Graph
    points: tuple[Point, ...]
    rows: tuple[tuple[int, ...], ...]
    columns: tuple[tuple[int, ...], ...]


def _triangle_witness(
    triangles: Sequence[tuple[Point, Point, Point]], d: int | None = None
) -> tuple[MapWitness, list[Point], dict[Point, int]]:
    """Witness joining each triangle (an A-vertex) to its three corners, embedded by coordinates."""
    a_count = len(triangles)
    b_ids: dict[Point, int] = {}
    for tri in triangles:
        for p in tri:
            b_ids.setdefault(p, a_count + len(b_ids))
    pts: list[Point] = [
        (sum((p[0] for p in tri), Fraction(0)) / 3, sum((p[1] for p in tri), Fraction(0)) / 3) for tri in triangles
    ]
    pts.extend(sorted(b_ids, key=b_ids.__getitem__))
    edges = [(a, b_ids[p]) for a, tri in enumerate(triangles) for p in tri]
    h = Graph.from_edges(len(pts), edges)
    return MapWitness.of(RotationSystem.from_positions(h, pts), a_count, d), pts, b_ids


def yz_generator(p: int, q: int, r: int) -> YZInstance:
    """Witness of ``Y_{p,q,r}`` (nations = its 4pqr triangles) and the map graph ``Z_{p,q,r}``.

    The (p+1) x (q+1) grid has every edge cut into ``r`` segments and a centre
    in each face; each segment and its face centre bound a triangle. Triangle
    ids follow ``nation_index``.
    """
    if min(p, q, r) < 1:
        raise GraphError("p, q, r must be positive")
    triangles = []
    for i in range(p):
        for j in range(q):
            c = _center(i, j, r)
            for side in range(4):
                for s in range(r):
                    a, b = _segment(i, j, side, s, r)
                    triangles.append(((Fraction(a[0]), Fraction(a[1])), (Fraction(b[0]), Fraction(b[1])), c))
    witness, pts, _ = _triangle_witness(triangles)
    rows = tuple(
        tuple(nation_index(i, j, side, seg, q, r) for i in range(p) for side, seg in ((3, r - 1 - s), (1, s)))
        for j in range(q)
        for s in range(r)
    )
    columns = tuple(
        tuple(nation_index(i, j, side, seg, q, r) for j in range(q) for side, seg in ((0, s), (2, r - 1 - s)))
        for i in range(p)
        for s in range(r)
    )
    return YZInstance(witness, witness_graph(witness), tuple(pts), rows, columns)


@dataclass(frozen=True)
class BlowupInstance:
    witness: MapWitness
    graph: Graph
    block_of: tuple[int, ...]
    below_analysis_q: bool

    def edge_block(self, v: int, w: int) -> list[int]:
        return [a for a, b in enumerate(self.block_of) if b in (v, w)]


def _side_param(x: int, y: int, q: int, r: int) -> tuple[int, int] | None:
    """(side, t) for a point on a glued side, counted along counter-clockwise boundary order."""
    lo, hi = r, (q - 1) * r
    if y == 0 and lo <= x <= hi:
        return 0, x - lo
    if x == q * r and lo <= y <= hi:
        return 1, y - lo
    if y == q * r and lo <= x <= hi:
        return 2, hi - x
    if x == 0 and lo <= y <= hi:
        return 3, hi - y
    return None


_FORWARD = ((1, 0), (0, 1), (-1, 0), (0, -1))


def map_blowup(h: Graph | RotationSystem, q: int, r: int) -> BlowupInstance:
    """Glue copies of ``Z_{q,q,r}`` minus the corner faces along the edges of an embedded ``h``.

    Side ``i`` (bottom, right, top, left) of the block of ``v`` is glued to the
    block of the i-th neighbour in the rotation at ``v``, with the side
    parameter reversed so the result stays orientable.
    """
    rs_h = h if isinstance(h, RotationSystem) else RotationSystem.from_neighbor_orders(h.n, h.adj)
    hg = rs_h.graph
    if rs_h.m != hg.m:
        raise GraphError("host graph must be simple")
    if q < BLOWUP_MIN_Q:
        raise GraphError(f"q = {q} below the supported minimum {BLOWUP_MIN_Q}")
    if r < 2:
        raise GraphError("r must be at least 2")
    for v in range(rs_h.n):
        if len(rs_h.rotation[v]) > 4:
            raise GraphError(f"side capacity exceeded: vertex {v} has degree {len(rs_h.rotation[v])} > 4")
    corners = {(0, 0), (q - 1, 0), (q - 1, q - 1), (0, q - 1)}
    nations: list[tuple[int, tuple[tuple[int, int], tuple[int, int]], tuple[int, int]]] = []
    for i in range(q):
        for j in range(q):
            if (i, j) in corners:
                continue
            for side in range(4):
                for s in range(r):
                    nations.append(((i, j), _segment(i, j, side, s, r), (side, s)))
    per_block = len(nations)

    # points are doubled so that face centres are integral
    def key(v: int, pt: tuple[int, int]) -> tuple[int, int, int]:
        return v, pt[0], pt[1]

    parent: dict[tuple[int, int, int], tuple[int, int, int]] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    side_len = (q - 2) * r
    side_points: dict[tuple[int, int, int], tuple[int, int, int]] = {}
    for x in range(0, q * r + 1):
        for y in range(0, q * r + 1):
            sp = _side_param(x, y, q, r)
            if sp is not None:
                side_points[sp + (0,)] = (x, y, 0)
    for v in range(rs_h.n):
        for side, e in enumerate(rs_h.rotation[v]):
            w = rs_h.head(rs_h.dart_from(v, e))
            other = rs_h.rotation[w].index(e)
            if v > w:
                continue
            for t in range(side_len + 1):
                xv, yv, _ = side_points[(side, t, 0)]
                xw, yw, _ = side_points[(other, side_len - t, 0)]
                a, b = find(key(v, (2 * xv, 2 * yv))), find(key(w, (2 * xw, 2 * yw)))
                if a != b:
                    parent[max(a, b)] = min(a, b)

    fans: dict[tuple[int, int, int], list[tuple[int, int]]] = {}
    a_id = 0
    block_of = []
    triangle_corners = []
    for v in range(rs_h.n):
        for (i, j), (pa, pb), _ in nations:
            cx, cy = 2 * i * r + r, 2 * j * r + r
            corners_doubled = ((2 * pa[0], 2 * pa[1]), (2 * pb[0], 2 * pb[1]), (cx, cy))
            triangle_corners.append((v, corners_doubled))
            block_of.append(v)
            for k, pt in enumerate(corners_doubled):
                fans.setdefault(key(v, pt), []).append((a_id, k))
            a_id += 1
    a_count = a_id

    def centroid(a: int) -> tuple[float, float]:
        pts = triangle_corners[a][1]
        return sum(p[0] for p in pts) / 3, sum(p[1] for p in pts) / 3

    def ordered_fan(pt_key: tuple[int, int, int]) -> list[tuple[int, int]]:
        _, px, py = pt_key
        sp = _side_param(px // 2, py // 2, q, r) if px % 2 == 0 and py % 2 == 0 else None
        ux, uy = _FORWARD[sp[0]] if sp else (1, 0)

        def angle(item):
            cx, cy = centroid(item[0])
            dx, dy = cx - px, cy - py
            return math.atan2(ux * dy - uy * dx, ux * dx + uy * dy) % (2 * math.pi)

        return sorted(fans[pt_key], key=angle)

    groups: dict[tuple[int, int, int], list[tuple[int, int, int]]] = {}
    for pk in fans:
        groups.setdefault(find(pk), []).append(pk)
    b_order = sorted(groups)
    ends = [(a, 0) for a in range(a_count) for _ in range(3)]
    rotation: list[tuple[int, ...]] = [(3 * a, 3 * a + 1, 3 * a + 2) for a in range(a_count)]
    for b_index, rep in enumerate(b_order):
        b = a_count + b_index
        members = sorted(groups[rep])
        fan = []
        for pk in members:
            fan.extend(ordered_fan(pk))
        for a, k in fan:
            ends[3 * a + k] = (a, b)
        rotation.append(tuple(3 * a + k for a, k in fan))
    rs = RotationSystem(a_count + len(b_order), tuple(ends), tuple(rotation))
    if per_block != 4 * q * q * r - 16 * r:
        raise AssertionError("block nation count drifted from 4q^2 r - 16 r")
    witness = MapWitness.of(rs, a_count)
    return BlowupInstance(witness, witness_graph(witness), tuple(block_of), q < BLOWUP_ANALYSIS_Q)
