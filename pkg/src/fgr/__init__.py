"""Stallings core graphs, the FGR category and surjectivity problems over free groups."""

from .words import Letter, Word, WordError, cyclic_reduce, parse_word, reduce, substitute, tau
from .graphs import LabeledGraph, core, fold, subgroup_graph, unique_morphism, whitehead_graph
from .category import FgrMorphism, FgrObject, apply_functor, validate
from .partition import classify_and_factor, decompose, height
from .solver import Problem, Solver, Status, solve
from .coords import case_select, conjugacy_decompose, eight_case_table, verify_counterexample
from .analysis import explore_stencil_classes, is_primitive_rank2, rewrite_in_subgroup_basis

__version__ = "0.1.0"

__all__ = [
    "Letter", "Word", "WordError", "cyclic_reduce", "parse_word", "reduce", "substitute", "tau",
    "LabeledGraph", "core", "fold", "subgroup_graph", "unique_morphism", "whitehead_graph",
    "FgrMorphism", "FgrObject", "apply_functor", "validate",
    "classify_and_factor", "decompose", "height",
    "Problem", "Solver", "Status", "solve",
    "case_select", "conjugacy_decompose", "eight_case_table", "verify_counterexample",
    "explore_stencil_classes", "is_primitive_rank2", "rewrite_in_subgroup_basis",
]
