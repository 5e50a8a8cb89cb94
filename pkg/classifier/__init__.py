"""
Presentations of the classifying category of a theory over a finite
parameter set, with the generic bundle and its action.
"""

from .arrows import ArrowLayer, gen_arrows, gen_core, map_relations
from .build import ClassifierBundle, build_classifier, classifier_for, gen_action, gen_generic_bundle
from .bundle import (
    SortBundle,
    equiv_extension,
    gen_sort_bundle,
    interpret_in_E,
    relation_sequent,
    relation_subs,
    relation_sublocale,
)
from .export import LoadedBundle, export_bundle, load_bundle
from .lowering import lower_formula, lower_in_context
from .objects import gen_objects
from .params import ParameterSet, alpha_id, at, equiv_id, rel_id, sim_id
from .point_category import pair_point, point_category
from .product import classifier_product_check

__all__ = [
    "ArrowLayer",
    "ClassifierBundle",
    "LoadedBundle",
    "ParameterSet",
    "SortBundle",
    "alpha_id",
    "at",
    "build_classifier",
    "classifier_for",
    "classifier_product_check",
    "equiv_extension",
    "equiv_id",
    "export_bundle",
    "gen_action",
    "gen_arrows",
    "gen_core",
    "gen_generic_bundle",
    "gen_objects",
    "gen_sort_bundle",
    "interpret_in_E",
    "load_bundle",
    "lower_formula",
    "lower_in_context",
    "map_relations",
    "pair_point",
    "point_category",
    "rel_id",
    "relation_sequent",
    "relation_subs",
    "relation_sublocale",
    "sim_id",
]
