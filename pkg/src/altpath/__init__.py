"""Alternating-path relevance for clause sets.

Distances and bounded neighborhoods over propositional and first-order
clause sets, a relevance-restricted splitting solver, a set-of-support
resolution checker, clause splitting, and parsing/generation utilities.
"""

from altpath.clauses import (
    App,
    ArityError,
    Clause,
    ClauseSet,
    Literal,
    Var,
    complementary_unifiable,
    negate,
    unify,
    unify_atoms,
)
from altpath.graph import (
    FIRST_ORDER,
    INF,
    PROPOSITIONAL_HUB,
    AlternatingPath,
    DistanceMap,
    RelevanceGraph,
    UnifCache,
    bfs_from_support,
    bounded_build_and_search,
    build_graph,
    check_alternating_path,
    is_alternating_path,
    multi_support_intersection,
    purity_filter,
    relevance_distance,
    relevant_set,
)
from altpath.dpll import (
    SolveResult,
    SolverConfig,
    SolveStats,
    SteppingSequence,
    dpll,
    dpll_rel,
    neighborhood_counts,
    stepping_sequence,
    support_neighborhood,
    support_radius,
)
from altpath.resolution import (
    ResolutionSequence,
    SequenceEntry,
    SosResult,
    hyper_resolution_levels,
    linear_sequence_from_path,
    resolve,
    sos_refute,
    validate_sequence,
    verify_support_path_property,
)
from altpath.splitting import (
    SplitPlan,
    binary_split_plan,
    choose_split_variable,
    descendants,
    expand_restricted,
    full_split_plan,
    ground_instances,
    herbrand_universe,
    split_clause,
)
from altpath.parsing import (
    ParseError,
    detect_format,
    parse_auto,
    parse_dimacs,
    parse_tptp,
    print_dimacs,
    print_format,
    print_tptp,
)

__all__ = [
    "App",
    "ArityError",
    "Clause",
    "ClauseSet",
    "Literal",
    "Var",
    "complementary_unifiable",
    "negate",
    "unify",
    "unify_atoms",
    "FIRST_ORDER",
    "INF",
    "PROPOSITIONAL_HUB",
    "AlternatingPath",
    "DistanceMap",
    "RelevanceGraph",
    "UnifCache",
    "bfs_from_support",
    "bounded_build_and_search",
    "build_graph",
    "check_alternating_path",
    "is_alternating_path",
    "multi_support_intersection",
    "purity_filter",
    "relevance_distance",
    "relevant_set",
    "SolveResult",
    "SolverConfig",
    "SolveStats",
    "SteppingSequence",
    "dpll",
    "dpll_rel",
    "neighborhood_counts",
    "stepping_sequence",
    "support_neighborhood",
    "support_radius",
    "ResolutionSequence",
    "SequenceEntry",
    "SosResult",
    "hyper_resolution_levels",
    "linear_sequence_from_path",
    "resolve",
    "sos_refute",
    "validate_sequence",
    "verify_support_path_property",
    "SplitPlan",
    "binary_split_plan",
    "choose_split_variable",
    "descendants",
    "expand_restricted",
    "full_split_plan",
    "ground_instances",
    "herbrand_universe",
    "split_clause",
    "ParseError",
    "detect_format",
    "parse_auto",
    "parse_dimacs",
    "parse_tptp",
    "print_dimacs",
    "print_format",
    "print_tptp",
]
