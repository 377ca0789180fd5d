"""Minor-model verification and the zig-zag K_n model in the king's graph."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import BranchSets, Graph


@dataclass(frozen=True)
class MinorCheck:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_minor(g: Graph, branch: BranchSets, h: Graph) -> MinorCheck:
    """Check that ``branch`` is a model of ``h`` in ``g`` (set ``i`` for vertex ``i`` of h)."""
    if len(branch) != h.n:
        return MinorCheck(False, f"{len(branch)} branch sets for {h.n} minor vertices")
    owner: dict[int, int] = {}
    for i, s in enumerate(branch.sets):
        for v in s:
            if not 0 <= v < g.n:
                return MinorCheck(False, f"set {i} contains non-vertex {v}")
            owner[v] = i
    for i, s in enumerate(branch.sets):
        sub, _ = g.induced(s)
        if not sub.is_connected():
            return MinorCheck(False, f"set {i} disconnected")
    touching: set[tuple[int, int]] = set()
    for u, v in g.edges:
        a, b = owner.get(u), owner.get(v)
        if a is not None and b is not None and a != b:
            touching.add((min(a, b), max(a, b)))
    for i, j in sorted(h.edges):
        if (i, j) not in touching:
            return MinorCheck(False, f"sets {i} and {j} not adjacent")
    return MinorCheck(True)


def king_index(a: int, b: int, n: int) -> int:
    """Id of 1-based coordinate ``(a, b)`` in the 2n x 2n king's graph."""
    return (a - 1) * 2 * n + (b - 1)


def king_graph(n: int) -> Graph:
    """The 2n x 2n grid with both diagonals across each face."""
    side = 2 * n
    edges = []
    for a in range(1, side + 1):
        for b in range(1, side + 1):
            v = king_index(a, b, n)
            for da, db in ((1, 0), (0, 1), (1, 1), (1, -1)):
                a2, b2 = a + da, b + db
                if 1 <= a2 <= side and 1 <= b2 <= side:
                    edges.append((v, king_index(a2, b2, n)))
    return Graph.from_edges(side * side, edges)


def zigzag_rows(n: int, i: int) -> list[tuple[int, int]]:
    """R_i: (1,2i-1),(2,2i),(3,2i-1),...,(2n,2i)."""
    return [(x, 2 * i - 1 if x % 2 else 2 * i) for x in range(1, 2 * n + 1)]


def zigzag_cols(n: int, i: int) -> list[tuple[int, int]]:
    """C_i: (2i,1),(2i-1,2),(2i,3),...,(2i-1,2n)."""
    return [(2 * i if y % 2 else 2 * i - 1, y) for y in range(1, 2 * n + 1)]


def zigzag_branch_sets(n: int) -> tuple[Graph, BranchSets]:
    """King's graph G_n and the branch sets X_i = R_i + C_i of a K_n minor."""
    if n < 1:
        raise ValueError("n must be positive")
    g = king_graph(n)
    sets = []
    for i in range(1, n + 1):
        cells = zigzag_rows(n, i) + zigzag_cols(n, i)
        sets.append({king_index(a, b, n) for a, b in cells})
    return g, BranchSets.of(sets)
