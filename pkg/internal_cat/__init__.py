"""
Internal categories, functors, sheaves, anafunctors and descent in finite sets.
"""

from .anafunctors import (
    Anafunctor,
    TwoCellDatum,
    compose_anafunctors,
    functor_as_anafunctor,
    identity_anafunctor,
    two_cell_canonical,
    two_cell_functors,
    two_cell_source,
)
from .category import (
    CATEGORY_EQUATIONS,
    GROUPOID_EQUATIONS,
    FiniteCategory,
    category_violations,
    check_category,
    codiscrete_category,
    discrete_category,
    free_arrow_category,
    named_category,
    preorder_category,
    terminal_category,
)
from .core import core, core_inclusion, factor_through_core
from .descent import DescentResult, descend_dofib
from .functors import (
    InternalFunctor,
    InternalTransformation,
    check_functor,
    check_transformation,
    compose_functors,
    enumerate_functors,
    enumerate_transformations,
    functor_violations,
    identity_functor,
    identity_transformation,
    induced_category,
    is_fully_faithful,
    is_isomorphism,
    is_surjective_on_objects,
    pullback_categories,
    transformation_violations,
)
from .sheaves import (
    DiscreteOpfibration,
    SheafAction,
    SheafMorphism,
    action_to_dofib,
    action_violations,
    check_action,
    check_dofib,
    dofib_to_action,
    dofib_violations,
    find_action_iso,
    pullback_dofib,
    pullback_sheaf,
    sh_of_transformation,
    sheaf_morphism_violations,
)

__all__ = [
    "CATEGORY_EQUATIONS",
    "GROUPOID_EQUATIONS",
    "Anafunctor",
    "DescentResult",
    "DiscreteOpfibration",
    "FiniteCategory",
    "InternalFunctor",
    "InternalTransformation",
    "SheafAction",
    "SheafMorphism",
    "TwoCellDatum",
    "action_to_dofib",
    "action_violations",
    "category_violations",
    "check_action",
    "check_category",
    "check_dofib",
    "check_functor",
    "check_transformation",
    "codiscrete_category",
    "compose_anafunctors",
    "compose_functors",
    "core",
    "core_inclusion",
    "descend_dofib",
    "discrete_category",
    "dofib_to_action",
    "dofib_violations",
    "enumerate_functors",
    "enumerate_transformations",
    "factor_through_core",
    "find_action_iso",
    "free_arrow_category",
    "functor_as_anafunctor",
    "functor_violations",
    "identity_anafunctor",
    "identity_functor",
    "identity_transformation",
    "induced_category",
    "is_fully_faithful",
    "is_isomorphism",
    "is_surjective_on_objects",
    "named_category",
    "preorder_category",
    "pullback_categories",
    "pullback_dofib",
    "pullback_sheaf",
    "sh_of_transformation",
    "sheaf_morphism_violations",
    "terminal_category",
    "transformation_violations",
    "two_cell_canonical",
    "two_cell_functors",
    "two_cell_source",
]
