"""
Finite frame presentations: entailment, points, homs and constructions.
"""

from .base import (
    BOTTOM,
    DNF,
    TOP,
    Generator,
    MeetTerm,
    Point,
    Presentation,
    PresentationOrientation,
    Sequent,
    dnf_atom,
    dnf_holds,
    dnf_join,
    dnf_join_all,
    dnf_meet,
    dnf_meet_all,
    dnf_of_term,
    free_presentation,
    meet,
    normalize,
    substitute,
)
from .constructions import (
    PresentationExtension,
    Span,
    add_relations,
    canonical_id,
    canonical_presentation,
    copy_id,
    expand_presentation,
    expansion_point_map,
    relative_product,
)
from .entailment import countermodel, entails
from .homs import (
    FrameHomSpec,
    HomFailure,
    check_frame_hom,
    compose_homs,
    identity_hom,
    iso_check,
    make_hom,
    point_pushforward,
    require_verified,
)
from .saturation import SaturationProver, derives
from .search import count_points, enumerate_points, find_point, points_matrix
from .serialization import from_json, presentation_from_dict, presentation_to_dict, to_canonical_json

__all__ = [
    "BOTTOM",
    "DNF",
    "TOP",
    "FrameHomSpec",
    "Generator",
    "HomFailure",
    "MeetTerm",
    "Point",
    "Presentation",
    "PresentationExtension",
    "PresentationOrientation",
    "SaturationProver",
    "Sequent",
    "Span",
    "add_relations",
    "canonical_id",
    "canonical_presentation",
    "check_frame_hom",
    "compose_homs",
    "copy_id",
    "count_points",
    "countermodel",
    "derives",
    "dnf_atom",
    "dnf_holds",
    "dnf_join",
    "dnf_join_all",
    "dnf_meet",
    "dnf_meet_all",
    "dnf_of_term",
    "entails",
    "enumerate_points",
    "expand_presentation",
    "expansion_point_map",
    "find_point",
    "free_presentation",
    "from_json",
    "identity_hom",
    "iso_check",
    "make_hom",
    "meet",
    "normalize",
    "point_pushforward",
    "points_matrix",
    "presentation_from_dict",
    "presentation_to_dict",
    "require_verified",
    "substitute",
    "to_canonical_json",
]
