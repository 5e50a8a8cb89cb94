"""
The anafunctor representing a model over a finite category.

Over each object h, a fiberwise partial surjection σ: P ⇀↠ M_h presents
M_h as a subquotient of P, i.e. as a point of g0. The middle category has
the pairs (h, σ) as objects and is fully faithful over H; its right leg
sends (h, σ) to the model point read through

    [p ∼ q]      ↦ ⋁ₓ [f(p) = x] ∧ [f(q) = x]
    [(p⃗) ∈ R]    ↦ ⋁_{x⃗ ∈ R_h} ⋀ᵢ [f(pᵢ) = xᵢ]

and an arrow over k: h → h′ to the homomorphism acting by k.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Tuple

from classifier import ClassifierBundle, point_category
from classifier.params import alpha_id, at, equiv_id, rel_id, sim_id
from internal_cat import (
    Anafunctor,
    FiniteCategory,
    InternalFunctor,
    check_functor,
    induced_category,
)
from model_oracle import (
    BundleModel,
    BundleModelHom,
    base_change,
    bundle_hom_violations,
    generic_bundle_model,
    is_bundle_model_iso,
)
from presentations import (
    BOTTOM,
    TOP,
    DNF,
    FrameHomSpec,
    Point,
    check_frame_hom,
    dnf_join_all,
    dnf_of_term,
    enumerate_points,
    make_hom,
    point_pushforward,
)
from utils.errors import ForcingError

from .locale import JointForcingLocale, decode_partial_surjection, forcing_id, joint_forcing_presentation

logger = logging.getLogger(__name__)

Element = Hashable
Sigma = Tuple[Tuple[str, Tuple[Tuple[str, int], ...]], ...]
MiddleObject = Tuple[Hashable, Sigma]


@dataclass(frozen=True)
class RepresentingAnafunctor:
    anafunctor: Anafunctor
    model: BundleModel
    bundle: ClassifierBundle
    points: FiniteCategory
    generic: BundleModel
    sections: Dict[MiddleObject, Dict[str, Dict[str, Element]]]
    core: bool = False

    @property
    def left(self) -> InternalFunctor:
        return self.anafunctor.left

    @property
    def right(self) -> InternalFunctor:
        return self.anafunctor.right

    @property
    def middle(self) -> FiniteCategory:
        return self.anafunctor.middle

    def sigma(self, obj: MiddleObject, sort: str) -> Dict[str, Element]:
        """The partial surjection P ⇀↠ fiber of an object of the middle category."""
        return self.sections[obj][sort]


def _check_room(bundle: ClassifierBundle, M: BundleModel) -> None:
    n = len(bundle.params)
    for sort in M.theory.sorts:
        for h in M.base.objects:
            size = len(M.fiber(sort, h))
            if size > n:
                raise ForcingError(f"fiber of {sort} over {h!r} has {size} elements, more than |P| = {n}")


def _fiber_locale(bundle: ClassifierBundle, M: BundleModel, h) -> JointForcingLocale:
    parts = [(sort, bundle.params.tokens, tuple(range(len(M.fiber(sort, h))))) for sort in M.theory.sorts]
    return joint_forcing_presentation(parts, f"forcing({h!r})")


def fiber_hom(bundle: ClassifierBundle, M: BundleModel, h, locale: JointForcingLocale) -> FrameHomSpec:
    """g0 → forcing locale of the fibers over h, verified."""
    theory, P = bundle.theory, bundle.params.tokens
    fibers = {sort: M.fiber(sort, h) for sort in theory.sorts}
    index = {sort: {y: k for k, y in enumerate(fibers[sort])} for sort in theory.sorts}
    f = forcing_id
    table: Dict[str, DNF] = {}
    for sort in theory.sorts:
        for p in P:
            for q in P:
                table[sim_id(sort, p, q)] = dnf_join_all(
                    dnf_of_term([f(p, k, sort), f(q, k, sort)]) for k in range(len(fibers[sort]))
                )
    for rel in theory.relations:
        rows = [row for row in M.relations.get(rel.name, ()) if M.row_base(rel.arity, row) == h]
        if not rel.arity:
            table[rel_id(rel.name, ())] = TOP if rows else BOTTOM
            continue
        for args in itertools.product(P, repeat=len(rel.arity)):
            table[rel_id(rel.name, args)] = dnf_join_all(
                dnf_of_term([f(p, index[sort][y], sort) for sort, p, y in zip(rel.arity, args, row)]) for row in rows
            )
    spec = check_frame_hom(make_hom(bundle.g0, locale.presentation, table, f"sigma_{h!r}"))
    if not spec.verified:
        raise ForcingError(f"the structure over {h!r} is not a model: relation {spec.failure.relation} fails")
    return spec


def _sections(M: BundleModel, h, locale: JointForcingLocale) -> List[Tuple[Sigma, Dict[str, Dict[str, Element]], Point]]:
    out = []
    for pt in enumerate_points(locale.presentation):
        key = []
        tables = {}
        for sort in M.theory.sorts:
            graph = decode_partial_surjection(locale.part(sort), pt)
            fiber = M.fiber(sort, h)
            key.append((sort, tuple(sorted(graph.items()))))
            tables[sort] = {p: fiber[k] for p, k in graph.items()}
        out.append((tuple(key), tables, pt))
    return out


def _arrow_point(
    bundle: ClassifierBundle,
    M: BundleModel,
    core: bool,
    source: Point,
    target: Point,
    sigma_a: Dict[str, Dict[str, Element]],
    sigma_b: Dict[str, Dict[str, Element]],
    k,
) -> Point:
    ids = {at(g, 1) for g in source.trueset} | {at(g, 2) for g in target.trueset}
    for sort in bundle.theory.sorts:
        action = M.action(sort)
        for p, y in sigma_a[sort].items():
            image = action.act(y, k)
            ids.update(alpha_id(sort, p, q) for q, z in sigma_b[sort].items() if z == image)
    pres = bundle.layer(core).arrows
    violated = pres.first_violation(frozenset(ids))
    if violated is not None:
        raise ForcingError(f"arrow over {k!r} does not give a homomorphism: relation {violated} fails")
    return pres.point(ids)


def build_representing_anafunctor(
    bundle: ClassifierBundle,
    M: BundleModel,
    points: Optional[FiniteCategory] = None,
    generic: Optional[BundleModel] = None,
    core: bool = False,
) -> RepresentingAnafunctor:
    """
    H ←Ξ− [P ⇀↠_H M] −→ points of the classifier, for M over H = M.base.
    Every fiber must fit in P. With `core`, H must be a groupoid and the
    right leg lands in the invertible arrows.
    """
    _check_room(bundle, M)
    H = M.base
    if core and H.i is None:
        raise ForcingError("the core variant needs a groupoid base")
    points = points if points is not None else point_category(bundle, core)
    generic = generic if generic is not None else generic_bundle_model(bundle, core, points)

    objects: List[MiddleObject] = []
    over: Dict[MiddleObject, Hashable] = {}
    sections: Dict[MiddleObject, Dict[str, Dict[str, Element]]] = {}
    object_points: Dict[MiddleObject, Point] = {}
    for h in H.objects:
        locale = _fiber_locale(bundle, M, h)
        hom = fiber_hom(bundle, M, h, locale)
        for key, tables, pt in _sections(M, h, locale):
            obj = (h, key)
            objects.append(obj)
            over[obj] = h
            sections[obj] = tables
            object_points[obj] = point_pushforward(hom, pt)

    middle, xi = induced_category(H, objects, over, "forcing")
    on_arrows = {
        (a, k, b): _arrow_point(bundle, M, core, object_points[a], object_points[b], sections[a], sections[b], k)
        for a, k, b in middle.arrows
    }
    right = check_functor(InternalFunctor(middle, points, object_points, on_arrows, "representing"))
    anafunctor = Anafunctor(xi, right)
    logger.info(f"representing anafunctor over {H.name or 'H'}: {len(objects)} middle objects")
    return RepresentingAnafunctor(anafunctor, M, bundle, points, generic, sections, core)


# --- the pullback isomorphism -------------------------------------------------------


def explicit_fiber_iso(anaf: RepresentingAnafunctor) -> BundleModelHom:
    """
    Ξ*M → (right leg)*E sending y over (h, σ) to the element of E picked by
    [≡ p] for the p with σ(p) = y, i.e. [=y] ↦ ⋁ₚ [f(p) = y] ∧ [≡ p].
    """
    bundle = anaf.bundle
    source = base_change(anaf.left, anaf.model)
    target = base_change(anaf.right, anaf.generic)
    maps: Dict[str, Dict[Element, Element]] = {}
    for sort in bundle.theory.sorts:
        total = bundle.sort_bundle(sort).total
        table = {}
        for a, y in source.action(sort).elements:
            picked = frozenset(equiv_id(sort, 1, p) for p, z in anaf.sigma(a, sort).items() if z == y)
            table[(a, y)] = (a, total.point(anaf.right.obj(a).trueset | picked))
        maps[sort] = table
    return BundleModelHom(source, target, maps)


def verify_pullback_iso(anaf: RepresentingAnafunctor) -> BundleModelHom:
    """The explicit map Ξ*M → (right leg)*E, checked to be an isomorphism of models over the middle category."""
    candidate = explicit_fiber_iso(anaf)
    if is_bundle_model_iso(candidate):
        return candidate
    violations = bundle_hom_violations(candidate)
    detail = violations[0].equation if violations else "not bijective or does not reflect the relations"
    raise ForcingError(f"the explicit fiber map is not an isomorphism: {detail}")
