"""
Reading classifier points as models, homomorphisms and elements, and
writing them back.

Layers are named `objects`, `arrows`, `core` and `E:<sort>`.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple, Union

from classifier import ClassifierBundle
from classifier.params import at, equiv_id, map_id, strip_copy
from presentations import Point, Presentation, enumerate_points
from utils.errors import ModelError

from .homs import ModelHom
from .models import Cls, PERModel

logger = logging.getLogger(__name__)

LAYERS = ("objects", "arrows", "core")


@dataclass(frozen=True)
class ModelElement:
    """An element of the `sort` carrier of a model, i.e. one of its classes."""

    model: PERModel
    sort: str
    element: Cls

    def describe(self) -> str:
        return f"{{{','.join(self.element)}}} in {self.sort} of [{self.model.describe()}]"

    def to_dict(self) -> Dict[str, object]:
        return {"model": self.model.to_dict(), "sort": self.sort, "element": list(self.element)}


Decoded = Union[PERModel, ModelHom, ModelElement]


def parse_layer(bundle: ClassifierBundle, layer: str) -> Tuple[str, str]:
    """('objects' | 'arrows' | 'core' | 'E', sort) for a layer name; ValueError if unknown."""
    if layer in LAYERS:
        return layer, ""
    if layer.startswith("E:"):
        sort = layer[2:]
        if sort in bundle.theory.sorts:
            return "E", sort
    names = ", ".join(list(LAYERS) + [f"E:{s}" for s in bundle.theory.sorts])
    raise ValueError(f"unknown layer '{layer}'. Available: {names}")


def layer_presentation(bundle: ClassifierBundle, layer: str) -> Presentation:
    kind, sort = parse_layer(bundle, layer)
    if kind == "objects":
        return bundle.g0
    if kind == "arrows":
        return bundle.g1
    if kind == "core":
        return bundle.g1_core
    return bundle.sort_bundle(sort).total


# --- reading -----------------------------------------------------------------


def model_from_ids(bundle: ClassifierBundle, ids: Iterable[str]) -> PERModel:
    """The model whose object-layer generators are `ids` (copy suffixes already removed)."""
    theory = bundle.theory
    sims: Dict[str, Set[Tuple[str, str]]] = {sort: set() for sort in theory.sorts}
    rels: Dict[str, Set[Tuple[str, ...]]] = {rel.name: set() for rel in theory.relations}
    for gid in ids:
        kind, _, rest = gid.partition(":")
        if kind == "sim":
            sort, p, q = rest.split(":")
            sims[sort].add((p, q))
        elif kind == "rel":
            name, _, args = rest.partition(":")
            rels[name].add(tuple(args.split(",")) if args else ())
    return PERModel(
        theory,
        bundle.params,
        tuple(frozenset(sims[sort]) for sort in theory.sorts),
        tuple(frozenset(rels[rel.name]) for rel in theory.relations),
    )


def _copy(trueset: FrozenSet[str], copy: int) -> List[str]:
    out = []
    for gid in trueset:
        if "@" in gid:
            base, k = strip_copy(gid)
            if k == copy:
                out.append(base)
    return out


def _require_point(pres: Presentation, pt: Point) -> None:
    violated = pres.first_violation(pt.trueset)
    if violated is not None:
        raise ModelError(f"not a point of {pres.name}: relation {violated} fails")


def decode_hom(bundle: ClassifierBundle, trueset: FrozenSet[str], name: str = "alpha") -> ModelHom:
    source = model_from_ids(bundle, _copy(trueset, 1))
    target = model_from_ids(bundle, _copy(trueset, 2))
    tables: Dict[str, Dict[Cls, Cls]] = {}
    for sort in bundle.theory.sorts:
        table: Dict[Cls, Cls] = {}
        for c in source.classes(sort):
            p = c[0]
            hits = [q for q in bundle.params.tokens if map_id(name, sort, p, q) in trueset]
            if not hits:
                raise ModelError(f"no image recorded for class {c} of sort {sort}")
            table[c] = target.class_of(sort, hits[0])
        tables[sort] = table
    return ModelHom.from_tables(source, target, tables)


def decode_point(bundle: ClassifierBundle, pt: Point, layer: str) -> Decoded:
    """
    objects: the PER model; arrows/core: the homomorphism between the models
    on the two copies; E:<sort>: the model with the class picked by [≡ p].
    """
    pres = layer_presentation(bundle, layer)
    _require_point(pres, pt)
    kind, sort = parse_layer(bundle, layer)
    if kind == "objects":
        return model_from_ids(bundle, pt.trueset)
    if kind in ("arrows", "core"):
        return decode_hom(bundle, pt.trueset)
    model = model_from_ids(bundle, (g for g in pt.trueset if not g.startswith("equiv:")))
    picked = [p for p in bundle.params.tokens if equiv_id(sort, 1, p) in pt.trueset]
    element = model.class_of(sort, picked[0]) if picked else None
    if element is None or set(element) != set(picked):
        raise ModelError(f"[≡ p] generators {picked} do not pick a class of sort {sort}")
    return ModelElement(model, sort, element)


def decode_layer(bundle: ClassifierBundle, layer: str) -> List[Tuple[Point, Decoded]]:
    pres = layer_presentation(bundle, layer)
    return [(pt, decode_point(bundle, pt, layer)) for pt in enumerate_points(pres)]


# --- writing -----------------------------------------------------------------


def encode_model(bundle: ClassifierBundle, model: PERModel) -> Point:
    return bundle.g0.point(model.trueset())


def hom_trueset(h: ModelHom, name: str = "alpha", copies: Tuple[int, int] = (1, 2)) -> FrozenSet[str]:
    """Both models in their copies plus the saturated graph of every class map."""
    ids = {at(g, copies[0]) for g in h.source.trueset()}
    ids.update(at(g, copies[1]) for g in h.target.trueset())
    for sort, graph in zip(h.source.theory.sorts, h.maps):
        for c, d in graph:
            ids.update(map_id(name, sort, p, q) for p in c for q in d)
    return frozenset(ids)


def encode_hom(bundle: ClassifierBundle, h: ModelHom, core: bool = False) -> Point:
    pres = bundle.g1_core if core else bundle.g1
    return pres.point(hom_trueset(h))


def element_ids(element: ModelElement, copy: int = 1) -> FrozenSet[str]:
    return frozenset(equiv_id(element.sort, copy, p) for p in element.element)


def encode_element(bundle: ClassifierBundle, element: ModelElement) -> Point:
    total = bundle.sort_bundle(element.sort).total
    return total.point(element.model.trueset() | element_ids(element))
