"""
Homomorphisms between PER models: one function on classes per sort,
preserving every relation.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from utils.errors import AxiomViolation, ModelError

from .models import Cls, PERModel

logger = logging.getLogger(__name__)

Graph = Tuple[Tuple[Cls, Cls], ...]


@dataclass(frozen=True)
class ModelHom:
    """`maps` is aligned with the sorts; each entry lists (class, image) in source class order."""

    source: PERModel
    target: PERModel
    maps: Tuple[Graph, ...]

    @classmethod
    def from_tables(cls, source: PERModel, target: PERModel, tables: Dict[str, Dict[Cls, Cls]]) -> "ModelHom":
        maps = tuple(
            tuple((c, tables.get(sort, {}).get(c)) for c in source.classes(sort)) for sort in source.theory.sorts
        )
        return cls(source, target, maps)

    def table(self, sort: str) -> Dict[Cls, Cls]:
        return dict(self.maps[self.source.theory.sorts.index(sort)])

    def apply(self, sort: str, element: Cls) -> Cls:
        try:
            return self.table(sort)[element]
        except KeyError:
            raise ModelError(f"{element} is not an element of sort {sort} in the source model") from None

    def apply_tuple(self, sorts, elements) -> Tuple[Cls, ...]:
        return tuple(self.apply(sort, c) for sort, c in zip(sorts, elements))

    def is_bijective(self) -> bool:
        for sort, graph in zip(self.source.theory.sorts, self.maps):
            images = [image for _, image in graph]
            if len(set(images)) != len(images) or len(images) != self.target.size(sort):
                return False
        return True

    def describe(self) -> str:
        parts = []
        for sort, graph in zip(self.source.theory.sorts, self.maps):
            rendered = ", ".join("{" + ",".join(c) + "}↦{" + ",".join(d) + "}" for c, d in graph)
            parts.append(f"{sort}: {rendered or '∅'}")
        return "; ".join(parts)

    def to_dict(self) -> Dict[str, object]:
        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "maps": {
                sort: [[list(c), list(d)] for c, d in graph] for sort, graph in zip(self.source.theory.sorts, self.maps)
            },
        }


def hom_violations(h: ModelHom) -> List[AxiomViolation]:
    M, N = h.source, h.target
    for sort, graph in zip(M.theory.sorts, h.maps):
        if tuple(c for c, _ in graph) != M.classes(sort):
            return [AxiomViolation(f"{sort}-map total", (sort,))]
        for c, d in graph:
            if d not in N.classes(sort):
                return [AxiomViolation(f"{sort}-map lands in the target", (c, d))]
    for rel in M.theory.relations:
        image_rel = N.relation_tuples(rel.name)
        for elements in sorted(M.relation_tuples(rel.name)):
            if h.apply_tuple(rel.arity, elements) not in image_rel:
                return [AxiomViolation(f"preserves {rel.name}", elements)]
    return []


def check_hom(h: ModelHom) -> ModelHom:
    violations = hom_violations(h)
    if violations:
        raise ModelError("not a homomorphism: " + ", ".join(v.equation for v in violations))
    return h


def _candidates(M: PERModel, N: PERModel) -> Iterator[ModelHom]:
    sorts = M.theory.sorts
    per_sort = [
        [tuple(zip(M.classes(sort), images)) for images in itertools.product(N.classes(sort), repeat=M.size(sort))]
        for sort in sorts
    ]
    for maps in itertools.product(*per_sort):
        yield ModelHom(M, N, tuple(maps))


def enumerate_homs(M: PERModel, N: PERModel) -> List[ModelHom]:
    """
    Every homomorphism M → N. A sort with an empty source carrier contributes
    exactly one (empty) function; a nonempty one into an empty carrier none.
    """
    return [h for h in _candidates(M, N) if not hom_violations(h)]


def reflects(h: ModelHom) -> bool:
    M, N = h.source, h.target
    for rel in M.theory.relations:
        source_rel = M.relation_tuples(rel.name)
        for elements in M.tuples(rel.arity):
            if h.apply_tuple(rel.arity, elements) in N.relation_tuples(rel.name) and elements not in source_rel:
                return False
    return True


def is_iso(h: ModelHom) -> bool:
    return h.is_bijective() and reflects(h)


def enumerate_isos(M: PERModel, N: PERModel) -> List[ModelHom]:
    """Homomorphisms with a two-sided inverse: bijective on classes and reflecting every relation."""
    if any(M.size(sort) != N.size(sort) for sort in M.theory.sorts):
        return []
    return [h for h in enumerate_homs(M, N) if is_iso(h)]


def find_model_iso(M: PERModel, N: PERModel) -> Optional[ModelHom]:
    if any(M.size(sort) != N.size(sort) for sort in M.theory.sorts):
        return None
    for h in _candidates(M, N):
        if h.is_bijective() and not hom_violations(h) and reflects(h):
            return h
    return None


def identity_model_hom(M: PERModel) -> ModelHom:
    return ModelHom(M, M, tuple(tuple((c, c) for c in M.classes(sort)) for sort in M.theory.sorts))


def compose_model_homs(f: ModelHom, g: ModelHom) -> ModelHom:
    """f then g."""
    if f.target != g.source:
        raise ModelError("homomorphisms are not composable: codomain and domain differ")
    maps = tuple(
        tuple((c, g.table(sort)[d]) for c, d in graph) for sort, graph in zip(f.source.theory.sorts, f.maps)
    )
    return ModelHom(f.source, g.target, maps)


def invert_model_hom(h: ModelHom) -> ModelHom:
    if not is_iso(h):
        raise ModelError("homomorphism is not invertible")
    tables = {sort: {d: c for c, d in graph} for sort, graph in zip(h.source.theory.sorts, h.maps)}
    return ModelHom.from_tables(h.target, h.source, tables)


def iso_classes(models: List[PERModel]) -> List[List[PERModel]]:
    """Group models by isomorphism, keeping the input order within and across groups."""
    groups: List[List[PERModel]] = []
    for model in models:
        for group in groups:
            if find_model_iso(group[0], model) is not None:
                group.append(model)
                break
        else:
            groups.append([model])
    logger.debug(f"{len(models)} models in {len(groups)} isomorphism classes")
    return groups
