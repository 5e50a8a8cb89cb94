"""
Input language for finitary relational theories.
"""

from .parser import infer_context, load_theory, parse_theory
from .printer import format_formula, pretty_print
from .syntax import (
    And,
    Axiom,
    Eq,
    Exists,
    Fals,
    Formula,
    Or,
    Orientation,
    Rel,
    RelationSymbol,
    Signature,
    Theory,
    Tru,
    conj,
    disj,
    free_variables,
)
from .transforms import disjoint_union, prefix_theory, singlesort, sort_predicate_names

__all__ = [
    "And",
    "Axiom",
    "Eq",
    "Exists",
    "Fals",
    "Formula",
    "Or",
    "Orientation",
    "Rel",
    "RelationSymbol",
    "Signature",
    "Theory",
    "Tru",
    "conj",
    "disj",
    "disjoint_union",
    "format_formula",
    "free_variables",
    "infer_context",
    "load_theory",
    "parse_theory",
    "prefix_theory",
    "pretty_print",
    "singlesort",
    "sort_predicate_names",
]
