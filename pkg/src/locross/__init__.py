"""Layered tree decompositions, separators and surface embeddings for graphs with restricted crossings."""

from __future__ import annotations

from .decomposition import (
    LayeredTreeDecomposition,
    PathDecomposition,
    TreeDecomposition,
    flatten_layered,
    layered_width,
    pathwidth_decomposition,
    separator_from_td,
    validate_td,
)
from .drawing import Drawing, grid_projection_drawing, planarize, straight_line_crossings
from .embedder import HostMapping, LabeledBipartite, SurfaceReport, build_host, choose_q, crossing_report, load_balance
from .embedding import RotationSystem, euler_genus, trace_faces, triangulate
from .generators import expander_blowup_gk, grid3, random_regular
from .graph import BranchSets, Graph, Layering, bfs_layering, bfs_tree, cyclomatic_number, subdivide
from .mapgraph import MapWitness, half_square, map_blowup, map_ltd, medial_witness, witness_to_map, yz_generator
from .minors import verify_minor, zigzag_branch_sets
from .oracles import exact_pathwidth, exact_treewidth, min_separator_bruteforce
from .surface import gk_planar_ltd, planar_ltd

__all__ = [name for name in dir() if not name.startswith("_") and name != "annotations"]
