"""
Forcing locales of partial surjections, representing anafunctors, and the
desk-scale universal property check.
"""

from .anafunctor import (
    RepresentingAnafunctor,
    build_representing_anafunctor,
    explicit_fiber_iso,
    fiber_hom,
    verify_pullback_iso,
)
from .locale import (
    JointForcingLocale,
    PartialSurjectionLocale,
    basis_open_check,
    decode_partial_surjection,
    encode_partial_surjection,
    enumerate_partial_surjections,
    forcing_id,
    gen_forcing_presentation,
    joint_forcing_presentation,
)
from .zeta import ZetaReport, verify_zeta

__all__ = [
    "JointForcingLocale",
    "PartialSurjectionLocale",
    "RepresentingAnafunctor",
    "ZetaReport",
    "basis_open_check",
    "build_representing_anafunctor",
    "decode_partial_surjection",
    "encode_partial_surjection",
    "enumerate_partial_surjections",
    "explicit_fiber_iso",
    "fiber_hom",
    "forcing_id",
    "gen_forcing_presentation",
    "joint_forcing_presentation",
    "verify_pullback_iso",
    "verify_zeta",
]
