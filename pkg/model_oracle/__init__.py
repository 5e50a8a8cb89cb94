"""
Brute-force semantics: finite models, homomorphisms, models over finite
categories, and the point-level readings of the classifier.
"""

from .bijections import (
    BijectionCertificate,
    certify_layer,
    interpretation_agreement,
    oracle_layer,
    soundness_problems,
    structure_checks,
    theta_checks,
)
from .bundle_models import (
    BundleModel,
    BundleModelHom,
    base_change,
    bundle_hom_violations,
    bundle_model_violations,
    check_bundle_model,
    constant_bundle_model,
    enumerate_bundle_homs,
    enumerate_models_over,
    find_bundle_model_iso,
    functor_as_bundle_model,
    is_bundle_model_iso,
    model_category,
    random_bundle_model,
    set_model_as_bundle,
    transformation_action,
)
from .decode import (
    ModelElement,
    decode_layer,
    decode_point,
    encode_element,
    encode_hom,
    encode_model,
    layer_presentation,
    parse_layer,
)
from .generic import generic_bundle_model
from .homs import (
    ModelHom,
    check_hom,
    compose_model_homs,
    enumerate_homs,
    enumerate_isos,
    find_model_iso,
    identity_model_hom,
    invert_model_hom,
    iso_classes,
)
from .interpret import interpret_formula
from .models import PERModel, check_model, enumerate_models, model_violations
from .singlesort import singlesort_equivalence, singlesort_split, singlesort_translation

__all__ = [
    "BijectionCertificate",
    "BundleModel",
    "BundleModelHom",
    "ModelElement",
    "ModelHom",
    "PERModel",
    "base_change",
    "bundle_hom_violations",
    "bundle_model_violations",
    "certify_layer",
    "check_bundle_model",
    "check_hom",
    "check_model",
    "compose_model_homs",
    "constant_bundle_model",
    "decode_layer",
    "decode_point",
    "encode_element",
    "encode_hom",
    "encode_model",
    "enumerate_bundle_homs",
    "enumerate_homs",
    "enumerate_isos",
    "enumerate_models",
    "enumerate_models_over",
    "find_bundle_model_iso",
    "find_model_iso",
    "functor_as_bundle_model",
    "generic_bundle_model",
    "identity_model_hom",
    "interpret_formula",
    "interpretation_agreement",
    "invert_model_hom",
    "is_bundle_model_iso",
    "iso_classes",
    "layer_presentation",
    "model_category",
    "model_violations",
    "oracle_layer",
    "parse_layer",
    "random_bundle_model",
    "set_model_as_bundle",
    "singlesort_equivalence",
    "singlesort_split",
    "singlesort_translation",
    "soundness_problems",
    "structure_checks",
    "theta_checks",
    "transformation_action",
]
