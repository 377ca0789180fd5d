"""Text and JSON formats: edge lists, rotation systems, deterministic JSON."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .graph import Graph, GraphError


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """``n m`` header then ``m`` lines ``u v``; blank lines and ``#`` comments ignored."""
    rows = [line.split("#", 1)[0].split() for line in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows or len(rows[0]) != 2:
        raise GraphError("edge list must start with a line 'n m'")
    n, m = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, found {len(body)}")
    for r in body:
        if len(r) != 2:
            raise GraphError(f"malformed edge line {' '.join(r)!r}")
    return Graph.from_edges(n, [(int(a), int(b)) for a, b in body])


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def read_text(path: str | Path) -> str:
    return Path(path).read_text()


def read_json(path: str | Path) -> Any:
    return json.loads(read_text(path))


def write_output(text: str, out: str | Path | None, stream) -> None:
    if out is None or str(out) == "-":
        stream.write(text)
    else:
        Path(out).write_text(text)
