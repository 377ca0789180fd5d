"""Batch command-line front end.

Exit codes: 0 success, 2 a validator or asserted bound failed, 3 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Sequence

from . import io
from .decomposition import (
    LayeredTreeDecomposition,
    ProviderContractError,
    flatten_layered,
    layered_width,
    pathwidth_constants,
    pathwidth_decomposition,
    separator_from_td,
    td_from_json,
    td_to_json,
    validate_td,
)
from .drawing import Drawing, grid_projection_drawing
from .embedder import choose_q, crossing_report, default_expander, build_host, host_violation
from .embedding import (
    RotationSystem,
    planar_grid_rotation,
    random_planar_triangulation,
    torus_grid_rotation,
)
from .generators import expander_blowup_gk, grid3, random_regular
from .graph import Graph
from .mapgraph import MapWitness, map_blowup, map_ltd, yz_generator
from .minors import verify_minor, zigzag_branch_sets
from .oracles import (
    SEPARATOR_CAP,
    WIDTH_CAP,
    exact_pathwidth,
    exact_treewidth,
    largest_component_after,
    min_separator_bruteforce,
    parse_rational,
)
from .report import run_suite
from .surface import flat_planar_provider, gk_planar_ltd, planar_ltd, strong_bound

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 2, 3


class UsageError(Exception):
    pass


class Violation(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, text: str) -> None:
    io.write_output(text, args.out, sys.stdout)


def _load_graph(path: str) -> Graph:
    return io.parse_edge_list(io.read_text(path))


def _load_rotation(path: str) -> RotationSystem:
    return RotationSystem.from_text(io.read_text(path))


def _host_graph(args) -> Graph:
    if args.host:
        return _load_graph(args.host)
    if args.regular:
        return random_regular(4, args.regular, args.seed)
    raise UsageError("give --host FILE or --regular N for the host graph")


# -- gen ------------------------------------------------------------------------


def cmd_gen(args) -> int:
    kind, params = args.kind, args.params

    def need(count: int) -> list[int]:
        if len(params) != count:
            raise UsageError(f"gen {kind} takes {count} integer parameters")
        return params

    if kind == "grid3":
        _emit(args, io.format_edge_list(grid3(*need(3))))
    elif kind == "regular":
        k, n = need(2)
        _emit(args, io.format_edge_list(random_regular(k, n, args.seed)))
    elif kind == "projection-drawing":
        _emit(args, io.dumps(grid_projection_drawing(*need(3)).to_json()))
    elif kind == "zigzag":
        (n,) = need(1)
        g, branch = zigzag_branch_sets(n)
        check = verify_minor(g, branch, Graph.complete(n))
        _emit(
            args,
            io.dumps({
                "graph": {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]},
                "branch_sets": [sorted(s) for s in branch.sets],
                "verified": check.ok,
            }),
        )
        return EXIT_OK if check.ok else EXIT_VIOLATION
    elif kind == "yz":
        inst = yz_generator(*need(3))
        _emit(args, io.dumps(inst.witness.to_json()))
        if args.graph_out:
            io.write_output(io.format_edge_list(inst.z), args.graph_out, sys.stdout)
    elif kind == "blowup-gk":
        q, r = need(2)
        _emit(args, io.format_edge_list(expander_blowup_gk(_host_graph(args), q, r)))
    elif kind == "blowup-map":
        q, r = need(2)
        inst = map_blowup(_host_graph(args), q, r)
        if inst.below_analysis_q:
            print(f"warning: q = {q} is below the q >= 100 of the lower-bound analysis", file=sys.stderr)
        _emit(args, io.dumps(inst.witness.to_json()))
        if args.graph_out:
            io.write_output(io.format_edge_list(inst.graph), args.graph_out, sys.stdout)
    elif kind == "torus":
        _emit(args, torus_grid_rotation(*need(2)).to_text())
    elif kind == "planar-grid":
        _emit(args, planar_grid_rotation(*need(2)).to_text())
    elif kind == "triangulation":
        (n,) = need(1)
        _emit(args, random_planar_triangulation(n, args.seed).to_text())
    return EXIT_OK


# -- decompose -------------------------------------------------------------------


def _infer_mode(args) -> str:
    if args.mode:
        return args.mode
    if args.drawing:
        return "gk-ltd"
    if args.witness:
        return "map-ltd"
    if args.rotation:
        return "planar-ltd"
    raise UsageError("cannot infer decomposition mode; give one of planar-ltd, gk-ltd, map-ltd, flatten, pathwidth")


def _require(args, name: str) -> str:
    value = getattr(args, name)
    if not value:
        raise UsageError(f"--{name} is required for this mode")
    return value


def _certified(bound: float, achieved: float) -> int:
    return EXIT_OK if achieved <= bound else EXIT_VIOLATION


def cmd_decompose(args) -> int:
    mode = _infer_mode(args)
    root = args.root
    if mode == "planar-ltd":
        rs = _load_rotation(_require(args, "rotation"))
        ltd, trace = planar_ltd(rs, root)
        cert = {"g": trace.genus, "bound": strong_bound(trace.genus), "achieved_layered_width": ltd.layered_width}
        payload = td_to_json(ltd.td, ltd.layering) | {"certificate": cert}
        _emit(args, io.dumps(payload))
        return _certified(cert["bound"], ltd.layered_width)
    if mode == "gk-ltd":
        d = Drawing.from_json(io.read_json(_require(args, "drawing")))
        ltd, cert = gk_planar_ltd(d, root)
        payload = td_to_json(ltd.td, ltd.layering) | {"certificate": cert.to_json()}
        _emit(args, io.dumps(payload))
        return _certified(cert.bound, cert.achieved_layered_width)
    if mode == "map-ltd":
        return _map_ltd(args)
    if mode == "flatten":
        g = _load_graph(_require(args, "graph"))
        td, layering = td_from_json(io.read_json(_require(args, "decomposition")))
        if layering is None:
            raise Violation("flatten needs a decomposition with a layering")
        problem = validate_td(g, td, layering)
        if problem:
            raise Violation(problem)
        k = layered_width(g, td, layering)
        flat = flatten_layered(g, LayeredTreeDecomposition(td, layering, k))
        bound = 2 * math.sqrt(max(k, 1) * g.n) - 1
        cert = {"k": k, "n": g.n, "bound": bound, "achieved_width": flat.width}
        _emit(args, io.dumps(td_to_json(flat) | {"certificate": cert}))
        return _certified(bound, flat.width)
    if mode == "pathwidth":
        rs = _load_rotation(_require(args, "rotation"))
        c = 2 * math.sqrt(3)
        c_eff, c_prime = pathwidth_constants(c)
        pd = pathwidth_decomposition(rs.graph, flat_planar_provider(rs), c_eff)
        bound = c_prime * math.sqrt(rs.n) - 1
        cert = {"c": c, "c_effective": c_eff, "c_prime": c_prime, "bound": bound, "achieved_width": pd.width}
        _emit(args, io.dumps(td_to_json(pd) | {"certificate": cert}))
        return _certified(bound, pd.width)
    raise UsageError(f"unknown mode {mode}")


def _map_ltd(args) -> int:
    w = MapWitness.from_json(io.read_json(_require(args, "witness")))
    ltd, cert = map_ltd(w, args.root if args.root else None)
    payload = td_to_json(ltd.td, ltd.layering) | {"certificate": cert.to_json()}
    _emit(args, io.dumps(payload))
    return _certified(cert.bound, cert.achieved_layered_width)


# -- validate / separator / oracle --------------------------------------------------


def cmd_validate(args) -> int:
    g = _load_graph(args.graph)
    td, layering = td_from_json(io.read_json(args.decomposition))
    problem = validate_td(g, td, layering)
    result = {"valid": problem is None, "violation": problem, "width": td.width}
    if problem is None and layering is not None:
        result["layered_width"] = layered_width(g, td, layering)
    _emit(args, io.dumps(result))
    return EXIT_OK if problem is None else EXIT_VIOLATION


def cmd_separator(args) -> int:
    eps = parse_rational(args.eps)
    if args.decomposition:
        g = _load_graph(_require(args, "graph"))
        td, _ = td_from_json(io.read_json(args.decomposition))
    elif args.rotation:
        rs = _load_rotation(args.rotation)
        g = rs.graph
        td = flat_planar_provider(rs)(g, tuple(range(g.n)))
    else:
        raise UsageError("separator needs --decomposition (with --graph) or --rotation")
    problem = validate_td(g, td)
    if problem:
        raise Violation(problem)
    sep = separator_from_td(g, td)
    largest = largest_component_after(g, sep)
    balanced = largest * eps.denominator <= eps.numerator * g.n
    _emit(args, io.dumps({"separator": sorted(sep), "size": len(sep), "largest_component": largest, "n": g.n,
                          "eps": str(eps), "balanced": balanced}))
    return EXIT_OK if balanced else EXIT_VIOLATION


def cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    if args.kind == "tw":
        result = {"treewidth": exact_treewidth(g, args.cap or WIDTH_CAP)}
    elif args.kind == "pw":
        result = {"pathwidth": exact_pathwidth(g, args.cap or WIDTH_CAP)}
    else:
        eps = parse_rational(args.eps)
        sep = min_separator_bruteforce(g, eps, args.cap or SEPARATOR_CAP)
        result = {"separator": list(sep), "size": len(sep), "eps": str(eps)}
    _emit(args, io.dumps(result))
    return EXIT_OK


# -- embed / report ---------------------------------------------------------------


def cmd_embed(args) -> int:
    if args.genus is None:
        raise UsageError("--genus is required")
    g = _load_graph(args.graph)
    q = choose_q(args.genus)
    hm = build_host(g, default_expander(q, args.seed), args.seed)
    rep = crossing_report(hm)
    problem = host_violation(hm, args.genus)
    payload = rep.to_json() | {"genus_budget": args.genus, "violation": problem}
    _emit(args, io.dumps(payload))
    return EXIT_OK if problem is None else EXIT_VIOLATION


def cmd_report(args) -> int:
    reports = run_suite(args.seed or 0)
    if args.timing:
        for r in reports:
            print(f"{r.instance}: {r.runtime:.3f}s", file=sys.stderr)
    _emit(args, io.dumps({"experiments": [r.to_json(args.timing) for r in reports]}))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_VIOLATION


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (u64)")
    common.add_argument("--out", default=None, help="output file (default stdout)")

    parser = _Parser(prog="locross", description="Layered decompositions of graphs with locally restricted crossings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", parents=[common], help="generate an instance")
    gen.add_argument(
        "kind",
        choices=["grid3", "projection-drawing", "zigzag", "yz", "blowup-gk", "blowup-map", "regular",
                 "torus", "planar-grid", "triangulation"],
    )
    gen.add_argument("params", type=int, nargs="*")
    gen.add_argument("--host", help="host graph edge list for blow-ups")
    gen.add_argument("--regular", type=int, help="use a random 4-regular host on this many vertices")
    gen.add_argument("--graph-out", help="also write the map graph as an edge list")
    gen.set_defaults(func=cmd_gen)

    dec = sub.add_parser("decompose", parents=[common], help="build a decomposition")
    dec.add_argument("mode", nargs="?", choices=["planar-ltd", "gk-ltd", "map-ltd", "flatten", "pathwidth"])
    dec.add_argument("--rotation")
    dec.add_argument("--drawing")
    dec.add_argument("--witness")
    dec.add_argument("--graph")
    dec.add_argument("--decomposition")
    dec.add_argument("--root", type=int, default=0)
    dec.set_defaults(func=cmd_decompose)

    mp = sub.add_parser("map-ltd", parents=[common], help="decompose the map graph of a witness")
    mp.add_argument("--witness", required=True)
    mp.add_argument("--root", type=int, default=None)
    mp.set_defaults(func=_map_ltd)

    val = sub.add_parser("validate", parents=[common], help="check a decomposition")
    val.add_argument("--graph", required=True)
    val.add_argument("--decomposition", required=True)
    val.set_defaults(func=cmd_validate)

    sep = sub.add_parser("separator", parents=[common], help="balanced separator from a decomposition")
    sep.add_argument("--graph")
    sep.add_argument("--decomposition")
    sep.add_argument("--rotation")
    sep.add_argument("--eps", default="1/2")
    sep.set_defaults(func=cmd_separator)

    orc = sub.add_parser("oracle", parents=[common], help="exact brute-force values")
    orc.add_argument("kind", choices=["tw", "pw", "sep"])
    orc.add_argument("--graph", required=True)
    orc.add_argument("--cap", type=int)
    orc.add_argument("--eps", default="1/2")
    orc.set_defaults(func=cmd_oracle)

    emb = sub.add_parser("embed", parents=[common], help="host mapping and crossing report")
    emb.add_argument("--graph", required=True)
    emb.add_argument("--genus", type=int)
    emb.set_defaults(func=cmd_embed)

    rep = sub.add_parser("report", parents=[common], help="run the bound-versus-measured suite")
    rep.add_argument("--timing", action="store_true", help="include runtimes (output no longer byte-stable)")
    rep.set_defaults(func=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"locross: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Violation, ProviderContractError) as exc:
        print(f"locross: violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except FileNotFoundError as exc:
        print(f"locross: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"locross: error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
