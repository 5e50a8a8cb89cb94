"""
Frame homomorphisms out of presented frames.

A FrameHomSpec sends every source generator to a DNF over the target
generators. It presents a frame hom exactly when the image of every source
relation is entailed in the target; check_frame_hom discharges those
obligations and records the first failure with a countermodel.

Direction: for a locale map f: X → Y the spec of f* has source = Y's
presentation and target = X's. Points travel the other way, from target to
source, via point_pushforward.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Mapping, Optional

from utils.errors import HomVerificationError, PresentationError, PresentationMismatchError

from .base import (
    DNF,
    MeetTerm,
    Point,
    Presentation,
    Sequent,
    dnf_atom,
    dnf_holds,
    dnf_meet_all,
    normalize,
    substitute,
)
from .entailment import POINTS, countermodel, entails

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomFailure:
    relation: Sequent
    image: Sequent
    countermodel: Optional[Point]

    def to_dict(self) -> dict:
        return {
            "relation": str(self.relation),
            "image": str(self.image),
            "countermodel": sorted(self.countermodel.trueset) if self.countermodel else None,
        }


@dataclass(frozen=True, eq=False)
class FrameHomSpec:
    source: Presentation
    target: Presentation
    mapping: Mapping[str, DNF] = field(default_factory=dict)
    verified: bool = False
    name: str = ""
    failure: Optional[HomFailure] = None

    def image_of_term(self, term: MeetTerm) -> DNF:
        return dnf_meet_all(self.mapping[g] for g in term)

    def image_of_dnf(self, dnf: DNF) -> DNF:
        return substitute(dnf, self.mapping)

    def image_of_sequent(self, seq: Sequent):
        """The target-side obligations: one sequent per term of the lhs image."""
        rhs = self.image_of_dnf(seq.rhs)
        return [Sequent(term, rhs, seq.label) for term in self.image_of_term(seq.lhs)]


def make_hom(source: Presentation, target: Presentation, mapping: Mapping[str, DNF], name: str = "") -> FrameHomSpec:
    """Build an unverified spec, checking totality and that images use target generators."""
    missing = [g for g in source.ids if g not in mapping]
    if missing:
        raise PresentationError(f"hom {name or '?'} is not total: no image for {missing[:5]}")
    extra = [g for g in mapping if g not in source.index]
    if extra:
        raise PresentationError(f"hom {name or '?'} maps undeclared source generators {extra[:5]}")
    normalized: Dict[str, DNF] = {}
    for g in source.ids:
        dnf = normalize(mapping[g])
        for term in dnf:
            target.check_ids(term, f"image of {g} under {name or 'hom'}")
        normalized[g] = dnf
    return FrameHomSpec(source, target, normalized, False, name)


def identity_hom(pres: Presentation, name: str = "id") -> FrameHomSpec:
    return FrameHomSpec(pres, pres, {g: dnf_atom(g) for g in pres.ids}, True, name)


def check_frame_hom(spec: FrameHomSpec, method: Optional[str] = None) -> FrameHomSpec:
    """Return a copy of `spec` with `verified` set, or with the first failure recorded."""
    for rel in spec.source.relations:
        for obligation in spec.image_of_sequent(rel):
            if method in (None, POINTS):
                refutation = countermodel(spec.target, obligation)
                holds = refutation is None
            else:
                holds = entails(spec.target, obligation, method)
                refutation = None if holds else countermodel(spec.target, obligation)
            if not holds:
                logger.debug(f"hom {spec.name}: relation {rel} fails")
                return replace(spec, verified=False, failure=HomFailure(rel, obligation, refutation))
    logger.debug(f"hom {spec.name}: verified {len(spec.source.relations)} relations")
    return replace(spec, verified=True, failure=None)


def require_verified(spec: FrameHomSpec) -> FrameHomSpec:
    if spec.verified:
        return spec
    if spec.failure is not None:
        raise HomVerificationError(spec.failure.relation, spec.failure.countermodel, spec.name)
    raise PresentationError(f"hom {spec.name or '?'} has not been verified")


def point_pushforward(hom: FrameHomSpec, pt: Point) -> Point:
    """The source point seen through `hom`: g is true iff pt satisfies hom(g)."""
    require_verified(hom)
    trueset = frozenset(g for g in hom.source.ids if dnf_holds(hom.mapping[g], pt.trueset))
    return hom.source.point(trueset)


def compose_homs(f: FrameHomSpec, g: FrameHomSpec, name: str = "") -> FrameHomSpec:
    """
    f: A → B and g: B → C (source → target) compose to A → C by substituting
    g's images into f's. Pushforward of the composite is pushforward along g
    followed by pushforward along f.
    """
    if not f.target.same_as(g.source):
        raise PresentationMismatchError(
            f"cannot compose {f.name or '?'} with {g.name or '?'}: target and source differ"
        )
    mapping = {a: substitute(f.mapping[a], g.mapping) for a in f.source.ids}
    return FrameHomSpec(f.source, g.target, mapping, f.verified and g.verified, name or f"{g.name}∘{f.name}")


def acts_as_identity(spec: FrameHomSpec, method: Optional[str] = None) -> bool:
    """Each generator and its image entail each other in the presentation."""
    pres = spec.source
    for g in pres.ids:
        image = spec.mapping[g]
        if not entails(pres, Sequent(frozenset({g}), image), method):
            return False
        for term in image:
            if not entails(pres, Sequent(term, dnf_atom(g)), method):
                return False
    return True


def iso_check(f: FrameHomSpec, g: FrameHomSpec, method: Optional[str] = None) -> bool:
    """True iff f and g are mutually inverse up to derivable equality."""
    if not (f.target.same_as(g.source) and g.target.same_as(f.source)):
        raise PresentationMismatchError("iso_check needs f: A → B and g: B → A")
    return acts_as_identity(compose_homs(f, g), method) and acts_as_identity(compose_homs(g, f), method)
