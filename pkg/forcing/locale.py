"""
Locales of partial surjections M ⇀↠ X between finite sets.

Generators [f(n) = x]; functionality [f(n)=x] ∧ [f(n)=y] ⊢ ⊥ for x ≠ y
(equal targets give a trivial sequent and are dropped); surjectivity
⊤ ⊢ ⋁ₙ [f(n) = x] for each x. Several sorts are forced jointly by
prefixing the ids with the sort: `f:A:n:x`.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from presentations import Generator, MeetTerm, Point, Presentation, Sequent, find_point
from utils.errors import ForcingError

logger = logging.getLogger(__name__)

Value = Hashable


def forcing_id(n: Value, x: Value, sort: Optional[str] = None) -> str:
    return f"f:{n}:{x}" if sort is None else f"f:{sort}:{n}:{x}"


@dataclass(frozen=True)
class PartialSurjectionLocale:
    source: Tuple[Value, ...]
    target: Tuple[Value, ...]
    presentation: Presentation
    sort: Optional[str] = None

    def generator(self, n: Value, x: Value) -> str:
        return forcing_id(n, x, self.sort)

    def pairs(self) -> Iterable[Tuple[Value, Value]]:
        return itertools.product(self.source, self.target)


def _labels_ok(values: Sequence[Value], what: str) -> None:
    labels = [str(v) for v in values]
    if len(set(labels)) != len(labels):
        raise ForcingError(f"{what} labels collide: {labels}")
    for label in labels:
        if ":" in label or not label:
            raise ForcingError(f"{what} label {label!r} clashes with the generator naming scheme")


def forcing_parts(
    source: Sequence[Value], target: Sequence[Value], sort: Optional[str] = None
) -> Tuple[Tuple[Generator, ...], Tuple[Sequent, ...]]:
    _labels_ok(source, "source")
    _labels_ok(target, "target")
    f = lambda n, x: forcing_id(n, x, sort)
    generators = tuple(
        Generator.make(f(n, x), f"[f({n})={x}]" if sort is None else f"[f{sort}({n})={x}]", kind="f", payload=(sort, n, x))
        for n, x in itertools.product(source, target)
    )
    relations: List[Sequent] = []
    for n in source:
        for x, y in itertools.combinations(target, 2):
            relations.append(Sequent.of([f(n, x), f(n, y)], [], "functionality"))
    for x in target:
        relations.append(Sequent.of([], [[f(n, x)] for n in source], "surjectivity"))
    return generators, tuple(relations)


def gen_forcing_presentation(
    source: Sequence[Value], target: Sequence[Value], sort: Optional[str] = None, name: str = ""
) -> PartialSurjectionLocale:
    generators, relations = forcing_parts(source, target, sort)
    pres = Presentation(generators, relations, name=name or "forcing")
    return PartialSurjectionLocale(tuple(source), tuple(target), pres, sort)


@dataclass(frozen=True)
class JointForcingLocale:
    """Partial surjections for several sorts at once, one part per sort."""

    parts: Tuple[PartialSurjectionLocale, ...]
    presentation: Presentation

    def part(self, sort: str) -> PartialSurjectionLocale:
        for part in self.parts:
            if part.sort == sort:
                return part
        raise ForcingError(f"no forcing part for sort '{sort}'")


def joint_forcing_presentation(
    parts: Sequence[Tuple[str, Sequence[Value], Sequence[Value]]], name: str = ""
) -> JointForcingLocale:
    locales = []
    generators: List[Generator] = []
    relations: List[Sequent] = []
    for sort, source, target in parts:
        gens, rels = forcing_parts(source, target, sort)
        locales.append(PartialSurjectionLocale(tuple(source), tuple(target), Presentation(gens, rels), sort))
        generators.extend(gens)
        relations.extend(rels)
    pres = Presentation(tuple(generators), tuple(relations), name=name or "forcing")
    return JointForcingLocale(tuple(locales), pres)


# --- points -------------------------------------------------------------------


def decode_partial_surjection(L: PartialSurjectionLocale, point: Point) -> Dict[Value, Value]:
    graph: Dict[Value, Value] = {}
    for n, x in L.pairs():
        if L.generator(n, x) in point.trueset:
            if n in graph:
                raise ForcingError(f"point is not single-valued at {n}")
            graph[n] = x
    missing = [x for x in L.target if x not in graph.values()]
    if missing:
        raise ForcingError(f"point misses {missing}")
    return graph


def encode_partial_surjection(L: PartialSurjectionLocale, graph: Dict[Value, Value]) -> Point:
    return L.presentation.point(L.generator(n, x) for n, x in graph.items())


def enumerate_partial_surjections(source: Sequence[Value], target: Sequence[Value]) -> List[Dict[Value, Value]]:
    """Every partial map source ⇀ target hitting all of target, by direct enumeration."""
    options = [None] + list(target)
    result = []
    for images in itertools.product(options, repeat=len(source)):
        graph = {n: x for n, x in zip(source, images) if x is not None}
        if set(graph.values()) == set(target):
            result.append(graph)
    return result


def _graph_of(L: PartialSurjectionLocale, meet: MeetTerm) -> List[Tuple[Value, Value]]:
    by_id = {L.generator(n, x): (n, x) for n, x in L.pairs()}
    try:
        return [by_id[g] for g in meet]
    except KeyError as e:
        raise ForcingError(f"{e.args[0]} is not a generator of this forcing locale") from None


def basis_open_check(L: PartialSurjectionLocale, meet: MeetTerm) -> bool:
    """
    Whether the basic open of `meet` is inhabited: its graph is single-valued
    and the unused part of the source is large enough to cover the targets
    not yet hit. Cross-checked against a point search.
    """
    graph = _graph_of(L, meet)
    images: Dict[Value, Value] = {}
    single_valued = True
    for n, x in graph:
        if images.setdefault(n, x) != x:
            single_valued = False
    room = len(L.source) - len(images) >= len(set(L.target) - set(images.values()))
    combinatorial = single_valued and room
    satisfiable = find_point(L.presentation, assume_true=meet) is not None
    if combinatorial != satisfiable:
        raise ForcingError(f"open check disagrees with point search on {sorted(meet)}")
    return combinatorial
