"""Parameterized 2-approximation for colorful walk cover and directed odd cycle transversal,
with hardness-gadget generators and exhaustive oracles."""

from .graph import Digraph, co_reachable_to, reachable_from, scc_topological
from .perm import (
    LabeledDigraph,
    bundle,
    build_aux,
    compose,
    doubling,
    find_colorful_walk,
    find_consistent_labeling,
    inverse,
    is_colorful_walk_cover,
    sigma_of_walk,
    walk_realizes,
)
from .pipeline import compress, solve_cwc_approx, solve_doct_approx, solve_nice, solve_restricted
from .separators import Inseparable, important_separators, min_vertex_cut, skew_separator
from .shadow import cover_family, shadow_of
from .torso import labeled_torso, realizable_perms
from .ulc import UlcInstance, solve_node_ulc

__all__ = [
    "Digraph", "LabeledDigraph", "Inseparable", "UlcInstance",
    "bundle", "build_aux", "co_reachable_to", "compose", "compress", "cover_family", "doubling",
    "find_colorful_walk", "find_consistent_labeling", "important_separators", "inverse",
    "is_colorful_walk_cover", "labeled_torso", "min_vertex_cut", "reachable_from", "realizable_perms",
    "scc_topological", "shadow_of", "sigma_of_walk", "skew_separator", "solve_cwc_approx",
    "solve_doct_approx", "solve_nice", "solve_node_ulc", "solve_restricted", "walk_realizes",
]
