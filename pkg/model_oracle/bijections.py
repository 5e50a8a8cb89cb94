"""
Certificates that the classifier's points are exactly the oracle's models,
homomorphisms, isomorphisms and elements, and that the structure maps act
on points as the corresponding model operations.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Tuple

from classifier import ClassifierBundle, interpret_in_E, point_category
from classifier.params import equiv_id
from presentations import Point, enumerate_points, point_pushforward
from theory_dsl import Formula
from theory_dsl.syntax import Context
from utils.errors import LocgenError

from .decode import Decoded, ModelElement, decode_hom, decode_point, layer_presentation, model_from_ids, parse_layer
from .homs import compose_model_homs, enumerate_homs, enumerate_isos, identity_model_hom, invert_model_hom
from .interpret import interpret_formula
from .models import Cls, PERModel, enumerate_models

logger = logging.getLogger(__name__)


def oracle_layer(bundle: ClassifierBundle, layer: str, models: Optional[Sequence[PERModel]] = None) -> List[Decoded]:
    """The oracle's enumeration matching a layer, in canonical order."""
    kind, sort = parse_layer(bundle, layer)
    models = list(models) if models is not None else enumerate_models(bundle.theory, bundle.params)
    if kind == "objects":
        return models
    if kind == "arrows":
        return [h for M in models for N in models for h in enumerate_homs(M, N)]
    if kind == "core":
        return [h for M in models for N in models for h in enumerate_isos(M, N)]
    return [ModelElement(M, sort, c) for M in models for c in M.classes(sort)]


@dataclass
class BijectionCertificate:
    """Point index ↔ oracle index table for one layer, with whatever went wrong."""

    layer: str
    point_count: int
    oracle_count: int
    table: List[Tuple[int, int]] = field(default_factory=list)
    problems: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.problems and self.point_count == self.oracle_count == len(self.table)

    def to_dict(self) -> Dict[str, object]:
        return {
            "layer": self.layer,
            "points": self.point_count,
            "oracle": self.oracle_count,
            "table": [list(row) for row in self.table],
            "problems": self.problems,
            "passed": self.passed,
        }


def certify_layer(
    bundle: ClassifierBundle, layer: str, models: Optional[Sequence[PERModel]] = None
) -> BijectionCertificate:
    points = enumerate_points(layer_presentation(bundle, layer))
    oracle = oracle_layer(bundle, layer, models)
    index: Dict[Hashable, int] = {item: k for k, item in enumerate(oracle)}
    cert = BijectionCertificate(layer, len(points), len(oracle))
    hit: Dict[int, int] = {}
    for row, pt in enumerate(points):
        try:
            decoded = decode_point(bundle, pt, layer)
        except LocgenError as e:
            cert.problems.append(f"point {row} does not decode: {e}")
            continue
        k = index.get(decoded)
        if k is None:
            cert.problems.append(f"point {row} decodes outside the oracle enumeration")
        elif k in hit:
            cert.problems.append(f"points {hit[k]} and {row} decode to the same oracle item {k}")
        else:
            hit[k] = row
            cert.table.append((row, k))
    for k in range(len(oracle)):
        if k not in hit:
            cert.problems.append(f"oracle item {k} is not the reading of any point")
            break
    logger.debug(f"{layer}: {cert.point_count} points, {cert.oracle_count} oracle items, passed={cert.passed}")
    return cert


# --- structure maps on points ---------------------------------------------------


def structure_checks(bundle: ClassifierBundle, core: bool = False) -> Dict[str, List[str]]:
    """
    s and t read as domain and codomain, e as identities, m as composition
    and, on the core, i as inversion. Lists the failures per map.
    """
    C = point_category(bundle, core)
    models = {x: model_from_ids(bundle, x.trueset) for x in C.objects}
    homs = {f: decode_hom(bundle, f.trueset) for f in C.arrows}
    problems: Dict[str, List[str]] = {"s": [], "t": [], "e": [], "m": []}
    for f, h in homs.items():
        if models[C.s[f]] != h.source:
            problems["s"].append(f"s of {h.describe()} is not its domain")
        if models[C.t[f]] != h.target:
            problems["t"].append(f"t of {h.describe()} is not its codomain")
    for x, M in models.items():
        if homs[C.e[x]] != identity_model_hom(M):
            problems["e"].append(f"e at [{M.describe()}] is not the identity")
    for (f, g), fg in C.m.items():
        if homs[fg] != compose_model_homs(homs[f], homs[g]):
            problems["m"].append(f"m({homs[f].describe()}, {homs[g].describe()}) is not the composite")
    if core and C.i is not None:
        problems["i"] = [
            f"i of {homs[f].describe()} is not its inverse" for f in C.arrows if homs[C.i[f]] != invert_model_hom(homs[f])
        ]
    return problems


def action_point(bundle: ClassifierBundle, sort: str, arrow: Point, element: Point) -> Point:
    """The point of E_A ×_{g0} g1 made of an arrow and an element over its domain."""
    source = bundle.sort_bundle(sort).action_source
    picked = {g for g in element.trueset if g.startswith(f"equiv:{sort}:1:")}
    return source.point(arrow.trueset | picked)


def theta_checks(bundle: ClassifierBundle, sort: str) -> List[str]:
    """θ on points is application of the homomorphism to the element."""
    sb = bundle.sort_bundle(sort)
    problems = []
    for pt in enumerate_points(sb.action_source):
        h = decode_hom(bundle, pt.trueset)
        picked = [p for p in bundle.params.tokens if equiv_id(sort, 1, p) in pt.trueset]
        element = h.source.class_of(sort, picked[0])
        image = decode_point(bundle, point_pushforward(sb.theta, pt), f"E:{sort}")
        expected = ModelElement(h.target, sort, h.apply(sort, element))
        if image != expected:
            problems.append(f"θ sends {{{','.join(element)}}} along {h.describe()} to {image.describe()}")
    return problems


# --- interpretation ---------------------------------------------------------------


def decode_tuple_point(bundle: ClassifierBundle, pt: Point, context: Context) -> Tuple[PERModel, Tuple[Cls, ...]]:
    """A point of the context product: the model and one class per context variable."""
    model = model_from_ids(bundle, (g for g in pt.trueset if not g.startswith("equiv:")))
    classes = []
    for i, (_, sort) in enumerate(context, 1):
        picked = [p for p in bundle.params.tokens if equiv_id(sort, i, p) in pt.trueset]
        classes.append(model.class_of(sort, picked[0]))
    return model, tuple(classes)


def classifier_interpretation(
    bundle: ClassifierBundle, formula: Formula, context: Context
) -> FrozenSet[Tuple[PERModel, Tuple[Cls, ...]]]:
    pres = interpret_in_E(bundle.theory, bundle.params, bundle.g0, formula, context)
    return frozenset(decode_tuple_point(bundle, pt, context) for pt in enumerate_points(pres))


def oracle_interpretation(
    models: Sequence[PERModel], formula: Formula, context: Context
) -> FrozenSet[Tuple[PERModel, Tuple[Cls, ...]]]:
    return frozenset((M, row) for M in models for row in interpret_formula(M, formula, context))


def interpretation_agreement(
    bundle: ClassifierBundle, formula: Formula, context: Context, models: Optional[Sequence[PERModel]] = None
) -> List[str]:
    models = models if models is not None else enumerate_models(bundle.theory, bundle.params)
    ours = classifier_interpretation(bundle, formula, context)
    theirs = oracle_interpretation(models, formula, context)
    problems = []
    if ours - theirs:
        problems.append(f"{len(ours - theirs)} classifier tuples the oracle rejects")
    if theirs - ours:
        problems.append(f"{len(theirs - ours)} oracle tuples missing from the classifier")
    return problems


def soundness_problems(bundle: ClassifierBundle) -> List[str]:
    """Every axiom holds in the generic model: φ^E ⊆ ψ^E on points."""
    problems = []
    for n, axiom in enumerate(bundle.theory.axioms):
        lhs = classifier_interpretation(bundle, axiom.lhs, axiom.context)
        rhs = classifier_interpretation(bundle, axiom.rhs, axiom.context)
        if not lhs <= rhs:
            problems.append(f"axiom {n}: {len(lhs - rhs)} generic tuples satisfy the premise only")
    return problems
