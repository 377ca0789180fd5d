"""Exhaustive oracles for desk-scale graphs: separators, treewidth, pathwidth.

Everything here works on bitmasks over ``range(n)`` and is exponential in n.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .graph import Graph

SEPARATOR_CAP = 20
WIDTH_CAP = 12


class CapExceeded(ValueError):
    pass


def parse_rational(text: str | Fraction | int) -> Fraction:
    """Parse ``"a/b"`` (or an int / Fraction) into a Fraction in (0, 1]."""
    eps = Fraction(text)
    if not 0 < eps <= 1:
        raise ValueError(f"epsilon must lie in (0, 1], got {eps}")
    return eps


def _masks(g: Graph) -> list[int]:
    out = [0] * g.n
    for u, v in g.edges:
        out[u] |= 1 << v
        out[v] |= 1 << u
    return out


def _largest_component(adj: list[int], alive: int) -> int:
    best = 0
    while alive:
        comp = alive & -alive
        frontier = comp
        while frontier:
            grown = 0
            f = frontier
            while f:
                low = f & -f
                grown |= adj[low.bit_length() - 1]
                f ^= low
            frontier = grown & alive & ~comp
            comp |= frontier
        alive &= ~comp
        best = max(best, comp.bit_count())
    return best


def largest_component_after(g: Graph, removed: Iterable[int]) -> int:
    """Order of the largest component of ``G - removed`` (plain BFS, independent of bitmasks)."""
    comps = g.components(removed)
    return max((len(c) for c in comps), default=0)


def is_separator(g: Graph, s: Iterable[int], eps: Fraction = Fraction(1, 2)) -> bool:
    """True iff every component of ``G - s`` has at most ``eps * n`` vertices."""
    return largest_component_after(g, s) * eps.denominator <= eps.numerator * g.n


def min_separator_bruteforce(g: Graph, eps: Fraction = Fraction(1, 2), cap: int = SEPARATOR_CAP) -> tuple[int, ...]:
    """Minimum eps-separator, first in lexicographic order among those of minimum size."""
    eps = parse_rational(eps)
    if g.n > cap:
        raise CapExceeded(f"{g.n} vertices exceeds separator cap {cap}")
    adj = _masks(g)
    full = (1 << g.n) - 1
    limit_num, limit_den = eps.numerator * g.n, eps.denominator
    for size in range(g.n + 1):
        for cand in combinations(range(g.n), size):
            mask = 0
            for v in cand:
                mask |= 1 << v
            if _largest_component(adj, full & ~mask) * limit_den <= limit_num:
                return cand
    raise AssertionError("removing every vertex is always a separator")


def _check_width_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise CapExceeded(f"{g.n} vertices exceeds exact-width cap {cap}")


def exact_treewidth(g: Graph, cap: int = WIDTH_CAP) -> int:
    """Treewidth by dynamic programming over elimination prefixes.

    TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|) where Q(S, v) is the
    set of vertices outside S + v reachable from v through S.
    """
    _check_width_cap(g, cap)
    n = g.n
    if n == 0:
        return -1
    adj = _masks(g)
    full = (1 << n) - 1

    def q_size(s: int, v: int) -> int:
        seen = 1 << v
        frontier = 1 << v
        reach_out = 0
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            reach_out |= nxt & ~s & ~(1 << v)
            frontier = nxt & s & ~seen
            seen |= frontier
        return reach_out.bit_count()

    tw = [0] * (1 << n)
    tw[0] = -1
    for s in range(1, full + 1):
        best = n
        rest = s
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            prev = s & ~low
            cand = max(tw[prev], q_size(prev, v))
            if cand < best:
                best = cand
            rest ^= low
        tw[s] = best
    return tw[full]


def exact_pathwidth(g: Graph, cap: int = WIDTH_CAP) -> int:
    """Pathwidth as vertex separation number, by DP over vertex-ordering prefixes."""
    _check_width_cap(g, cap)
    n = g.n
    if n == 0:
        return -1
    adj = _masks(g)
    full = (1 << n) - 1
    f = [0] * (1 << n)
    for s in range(1, full + 1):
        boundary = 0
        rest = s
        while rest:
            low = rest & -rest
            if adj[low.bit_length() - 1] & ~s:
                boundary += 1
            rest ^= low
        best = n
        rest = s
        while rest:
            low = rest & -rest
            best = min(best, f[s & ~low])
            rest ^= low
        f[s] = max(boundary, best)
    return f[full]
