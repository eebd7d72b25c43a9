"""Enumerating triangulations of point configurations up to symmetry.

The library computes regular, full and unconstrained triangulations of a
finite point configuration by reverse search over the flip graph, with
switch-table canonical forms for the symmetry handling and a budgeted
master-worker engine for parallel runs.
"""

from .errors import (
    BadPermutation, DigestMismatch, DuplicatePoint, FlipNotApplicable,
    GroupTooLarge, InconsistentOracle, InvalidTriangulation,
    KernelNotOneDimensional, MalformedCheckpoint, NotAffine, NotAPermutation,
    NotSpanning, NotUnimodular, ParseError, SecenumError, SeedNotRegular,
    UnknownFamily,
)
from .pointconfig import (
    PointConfiguration, compose, det_int, generate_family, homogenize,
    identity_perm, inverse, is_permutation, relabel_generator, reorder,
    validate_symmetry,
)
from .triangulation import (
    Flip, Triangulation, apply_flip, compare_total, dump_triangulation,
    enumerate_bfs, find_flips, gkz_vector, hull_volume, interior_ridges,
    is_full, is_unimodular, is_valid, make_triangulation,
    parse_triangulation, placing_triangulation, star_refine_full,
    vertices_used,
)
from .regularity import FoldingConstraint, folding_constraints, is_regular, strict_feasible
from .symmetry import (
    PermGroup, SwitchTable, act, build_switch_table, canonical_bruteforce,
    canonical_generic, canonical_rep, enumerate_elements, good_switches,
    jbound, jbound_stats, orbit, orbit_size,
)
from .search import (
    Node, SearchMode, WorkUnit, down_neighbors, find_root, passes_output,
    predecessor, reverse_search,
)
from .engine import (
    BudgetConfig, CacheConfig, CacheSet, CheckpointState, LRUCache, Report,
    cached, checkpoint_restore, checkpoint_write, dynamic_budget,
    input_digest, run,
)
from .cli import main, parse_input, render

__version__ = "0.1.0"

__all__ = [
    # configurations and symmetry input
    "PointConfiguration", "homogenize", "reorder", "generate_family",
    "validate_symmetry", "relabel_generator", "identity_perm", "compose",
    "inverse", "is_permutation", "det_int",
    # triangulations and flips
    "Triangulation", "Flip", "make_triangulation", "placing_triangulation",
    "star_refine_full", "find_flips", "apply_flip", "gkz_vector",
    "compare_total", "is_valid", "is_full", "is_unimodular", "hull_volume",
    "interior_ridges", "vertices_used", "enumerate_bfs",
    "dump_triangulation", "parse_triangulation",
    # regularity
    "is_regular", "folding_constraints", "strict_feasible",
    "FoldingConstraint",
    # groups, switch tables, canonical forms
    "PermGroup", "SwitchTable", "build_switch_table", "good_switches",
    "canonical_rep", "canonical_generic", "canonical_bruteforce",
    "enumerate_elements", "act", "orbit", "orbit_size", "jbound",
    "jbound_stats",
    # reverse search
    "SearchMode", "Node", "WorkUnit", "down_neighbors", "predecessor",
    "find_root", "passes_output", "reverse_search",
    # engine
    "run", "Report", "BudgetConfig", "CacheConfig", "CacheSet", "LRUCache",
    "cached", "dynamic_budget", "CheckpointState", "checkpoint_write",
    "checkpoint_restore", "input_digest",
    # command line
    "main", "parse_input", "render",
    # errors
    "SecenumError", "NotSpanning", "DuplicatePoint", "UnknownFamily",
    "KernelNotOneDimensional", "NotAffine", "NotUnimodular",
    "InvalidTriangulation", "FlipNotApplicable", "NotAPermutation",
    "GroupTooLarge", "SeedNotRegular", "InconsistentOracle", "DigestMismatch",
    "MalformedCheckpoint", "ParseError", "BadPermutation",
    "__version__",
]
