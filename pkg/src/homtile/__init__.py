"""Exact homomorphism tilings and covers of small graphs."""

from .constructions import (
    ExtremalSpec,
    blow_up,
    build_extremal_graph,
    build_k333_counterexample,
    named_graph,
    random_graph,
    standard_pattern,
)
from .graphs import Graph, Pattern, degree_profile, optimal_r_colouring, parse_graph, read_graph, write_graph
from .homs import count_homomorphisms, enumerate_columns, enumerate_homomorphisms, enumerate_injective_copies
from .lab import (
    MedianHypothesis,
    check_collapsed_constraint,
    check_cover_bound,
    check_median_hypothesis,
    greedy_clique_in_L,
    min_cover_clique,
)
from .lp import LpProblem, solve
from .tiling import (
    check_cover,
    check_integral_tiling,
    check_tiling,
    fractional_cover_number,
    fractional_tiling_number,
    integral_tiling_number,
    verify_duality,
)

__all__ = [
    "ExtremalSpec", "Graph", "LpProblem", "MedianHypothesis", "Pattern",
    "blow_up", "build_extremal_graph", "build_k333_counterexample", "check_collapsed_constraint",
    "check_cover", "check_cover_bound", "check_integral_tiling", "check_median_hypothesis",
    "check_tiling", "count_homomorphisms", "degree_profile", "enumerate_columns",
    "enumerate_homomorphisms", "enumerate_injective_copies", "fractional_cover_number",
    "fractional_tiling_number", "greedy_clique_in_L", "integral_tiling_number", "min_cover_clique",
    "named_graph", "optimal_r_colouring", "parse_graph", "random_graph", "read_graph", "solve",
    "standard_pattern", "verify_duality", "write_graph",
]
