"""Bound-versus-measured experiment records and the default experiment suite."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

from .decomposition import flatten_layered, pathwidth_decomposition, validate_td
from .drawing import grid_projection_drawing
from .embedder import crossing_report, default_expander, build_host, choose_q, host_violation
from .embedding import planar_grid_rotation, random_planar_triangulation, torus_grid_rotation
from .generators import random_regular
from .mapgraph import map_ltd, medial_witness, yz_generator
from .surface import flat_planar_provider, gk_planar_ltd, planar_ltd, strong_bound


@dataclass(frozen=True)
class ExperimentReport:
    instance: str
    bound_symbolic: str
    bound: float
    achieved: float
    asserted: bool
    valid: bool
    runtime: float | None = None

    @property
    def ok(self) -> bool:
        return self.valid and (not self.asserted or self.achieved <= self.bound)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "instance": self.instance,
            "bound_symbolic": self.bound_symbolic,
            "bound": self.bound,
            "achieved": self.achieved,
            "asserted": self.asserted,
            "valid": self.valid,
            "ok": self.ok,
        }
        if timing:
            out["runtime"] = self.runtime
        return out


def _timed(fn: Callable[[], tuple[str, str, float, float, bool, bool]]) -> ExperimentReport:
    start = time.perf_counter()
    instance, symbolic, bound, achieved, asserted, valid = fn()
    return ExperimentReport(instance, symbolic, bound, achieved, asserted, valid, time.perf_counter() - start)


def _planar(label, rs):
    def run():
        ltd, trace = planar_ltd(rs, 0)
        ok = validate_td(rs.graph, ltd.td, ltd.layering) is None
        return label, "2g+3", strong_bound(trace.genus), ltd.layered_width, True, ok

    return run


def _projection(p, q, r):
    def run():
        d = grid_projection_drawing(p, q, r)
        ltd, cert = gk_planar_ltd(d)
        ok = validate_td(d.base, ltd.td, ltd.layering) is None
        return f"projection({p},{q},{r})", "(4g+6)(k+1)", cert.bound, cert.achieved_layered_width, True, ok

    return run


def _flatten(p, q, r):
    def run():
        d = grid_projection_drawing(p, q, r)
        ltd, cert = gk_planar_ltd(d)
        td = flatten_layered(d.base, ltd)
        n = d.base.n
        bound = math.floor(2 * math.sqrt(6 * (cert.k + 1) * n) - 1)
        return f"flatten projection({p},{q},{r})", "2*sqrt(6(k+1)n)-1", bound, td.width, True, validate_td(d.base, td) is None

    return run


def _pathwidth(a, b):
    def run():
        rs = planar_grid_rotation(a, b)
        pd = pathwidth_decomposition(rs.graph, flat_planar_provider(rs), 2 * math.sqrt(3))
        bound = 11 * math.sqrt(3 * rs.n) - 1
        return f"pathwidth grid({a},{b})", "11*sqrt(kn)-1", bound, pd.width, True, validate_td(rs.graph, pd) is None

    return run


def _yz(p, q, r):
    def run():
        inst = yz_generator(p, q, r)
        ltd, cert = map_ltd(inst.witness)
        return f"Z({p},{q},{r})", "(2g+3)(2d+1)", cert.bound, cert.achieved_layered_width, True, True

    return run


def _medial_torus(a, b):
    def run():
        ltd, cert = map_ltd(medial_witness(torus_grid_rotation(a, b)))
        return f"medial torus({a},{b})", "(2g+3)(2d+1)", cert.bound, cert.achieved_layered_width, True, True

    return run


def _embed(n, genus, seed):
    def run():
        g = random_regular(4, n, seed)
        q = choose_q(genus)
        hm = build_host(g, default_expander(q, seed), seed)
        rep = crossing_report(hm)
        ok = host_violation(hm, genus) is None
        return f"embed 4-regular n={n} g={genus}", "cyclomatic(H) <= g", genus, rep.genus, True, ok

    return run


def default_suite(seed: int = 0) -> list[Callable]:
    return [
        _planar("grid(8,8)", planar_grid_rotation(8, 8)),
        _planar("triangulation(200)", random_planar_triangulation(200, seed)),
        _planar("torus(6,7)", torus_grid_rotation(6, 7)),
        _projection(3, 3, 2),
        _projection(4, 4, 3),
        _flatten(4, 4, 3),
        _pathwidth(6, 6),
        _yz(2, 2, 2),
        _medial_torus(4, 4),
        _embed(256, 48, seed),
    ]


def run_suite(seed: int = 0) -> list[ExperimentReport]:
    return [_timed(fn) for fn in default_suite(seed)]
