"""
Building new presentations from old ones: sublocales, wide pullbacks over a
shared base, the canonical presentation of a finite discrete locale, and
expanded presentations along spans of finite sets.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from utils.errors import PresentationError

from .base import (
    BOTTOM,
    TOP,
    Generator,
    Point,
    Presentation,
    PresentationOrientation,
    Sequent,
)


def add_relations(pres: Presentation, extra: Iterable[Sequent], name: str = "") -> Presentation:
    """Impose extra relations; the points are the old points satisfying them."""
    extra = tuple(extra)
    for rel in extra:
        pres.check_ids(rel.generators(), f"extra relation {rel}")
    return Presentation(pres.generators, pres.relations + extra, pres.orientation, name or pres.name)


COPY_PLACEHOLDER = "{k}"


def copy_id(template: str, k: int) -> str:
    """Suffix a fiber generator with its copy index; `{k}` in the id marks where."""
    if COPY_PLACEHOLDER in template:
        return template.replace(COPY_PLACEHOLDER, str(k))
    return f"{template}<{k}>"


@dataclass(frozen=True)
class PresentationExtension:
    """
    Extra generators and relations over some base presentation.

    Extra generator ids are templates (see copy_id). Relations may mention
    base generators and extra templates.
    """

    name: str
    generators: Tuple[Generator, ...] = ()
    relations: Tuple[Sequent, ...] = ()
    base_renaming: Optional[Callable[[str], str]] = field(default=None, compare=False)

    def rebased(self, renaming: Callable[[str], str]) -> "PresentationExtension":
        """The same extension glued along a different copy of the base."""
        return PresentationExtension(self.name, self.generators, self.relations, renaming)

    def instantiate(self, k: int) -> Tuple[Tuple[Generator, ...], Tuple[Sequent, ...]]:
        templates = {g.id for g in self.generators}

        def rename(gid: str) -> str:
            if gid in templates:
                return copy_id(gid, k)
            return self.base_renaming(gid) if self.base_renaming else gid

        generators = tuple(
            Generator(copy_id(g.id, k), copy_id(g.display, k), g.tags + (("copy", k),)) for g in self.generators
        )
        relations = tuple(
            Sequent(
                frozenset(rename(g) for g in rel.lhs),
                frozenset(frozenset(rename(g) for g in term) for term in rel.rhs),
                rel.label,
            )
            for rel in self.relations
        )
        return generators, relations


def relative_product(
    base: Presentation,
    fibers: Sequence[PresentationExtension],
    name: str = "",
) -> Presentation:
    """
    One shared copy of `base` plus the k-th fiber's extras tagged with index k
    (1-based). Presents the wide pullback of the fibers over the base.
    """
    generators: List[Generator] = list(base.generators)
    relations: List[Sequent] = list(base.relations)
    seen = {g.id for g in generators}
    for k, fiber in enumerate(fibers, start=1):
        new_generators, new_relations = fiber.instantiate(k)
        for g in new_generators:
            if g.id in seen:
                raise PresentationError(f"generator '{g.id}' of fiber {fiber.name} collides after suffixing")
            seen.add(g.id)
        generators.extend(new_generators)
        relations.extend(new_relations)
    return Presentation(tuple(generators), tuple(relations), base.orientation, name or base.name)


# --- canonical presentation of a finite set ---------------------------------


def canonical_id(x: object) -> str:
    return f"eq:{x}"


def canonical_presentation(
    elements: Sequence[object],
    orientation: PresentationOrientation = PresentationOrientation.OPEN,
    name: str = "",
) -> Presentation:
    """Generators [=x]; [=x] ∧ [=y] ⊢ ⊤ or ⊥ by equality of x and y; ⊤ ⊢ ⋁ₓ [=x]."""
    generators = tuple(Generator.make(canonical_id(x), f"[={x}]", kind="eq", payload=(str(x),)) for x in elements)
    relations: List[Sequent] = []
    for x in elements:
        for y in elements:
            lhs = frozenset({canonical_id(x), canonical_id(y)})
            relations.append(Sequent(lhs, TOP if x == y else BOTTOM, "single-valued"))
    relations.append(Sequent.of((), [[canonical_id(x)] for x in elements], "covering"))
    return Presentation(generators, tuple(relations), orientation, name or "canonical")


# --- expanded presentations -------------------------------------------------


@dataclass(frozen=True)
class Span:
    """A span G₀ ↞ G₁ ↪ G₂ of finite sets: `inner` ⊆ `outer`, q: inner ↠ base."""

    inner: Tuple[str, ...]
    outer: Tuple[str, ...]
    q: Mapping[str, str]

    def validate(self, base: Sequence[str], what: str) -> None:
        if len(set(self.outer)) != len(self.outer):
            raise PresentationError(f"{what} span: outer set has duplicates")
        missing = [x for x in self.inner if x not in self.outer]
        if missing:
            raise PresentationError(f"{what} span: inclusion is not defined on {missing}")
        if len(set(self.inner)) != len(self.inner):
            raise PresentationError(f"{what} span: inclusion is not injective")
        if set(self.q) != set(self.inner):
            raise PresentationError(f"{what} span: q must be total on the inner set")
        if set(self.q.values()) != set(base):
            raise PresentationError(f"{what} span: q is not surjective onto {list(base)}")

    def preimage(self, x: str) -> List[str]:
        return [g for g in self.inner if self.q[g] == x]


def expand_presentation(
    pres: Presentation,
    gen_span: Span,
    rel_span: Span,
    name: str = "",
) -> Presentation:
    """
    Re-present `pres` over the generators gen_span.outer.

    Relations are indexed by R₂ ⊔ G₂² ⊔ G₂: each r ∈ R₁ carries the relation
    q(r) over chosen representatives and R₂ \\ R₁ is padded with trivial
    relations; the G₂² block imposes g ⊢ g′ when both lie in G₁ with
    q(g) = q(g′) (trivially g ⊢ g otherwise); the G₂ block forces generators
    outside G₁ to ⊥.
    """
    gen_span.validate(pres.ids, "generator")
    rel_span.validate([str(i) for i in range(len(pres.relations))], "relation")
    representative: Dict[str, str] = {}
    for g in gen_span.inner:
        representative.setdefault(gen_span.q[g], g)
    inner = set(gen_span.inner)

    def lift(rel: Sequent) -> Sequent:
        return Sequent(
            frozenset(representative[g] for g in rel.lhs),
            frozenset(frozenset(representative[g] for g in term) for term in rel.rhs),
            rel.label,
        )

    relations: List[Sequent] = []
    for r in rel_span.outer:
        if r in rel_span.q:
            relations.append(lift(pres.relations[int(rel_span.q[r])]))
        else:
            relations.append(Sequent(frozenset(), TOP, "padding"))
    for g in gen_span.outer:
        for h in gen_span.outer:
            if g in inner and h in inner and gen_span.q[g] == gen_span.q[h]:
                relations.append(Sequent.of([g], [[h]], "identify"))
            else:
                relations.append(Sequent.of([g], [[g]], "identify"))
    for g in gen_span.outer:
        relations.append(Sequent(frozenset({g}), TOP if g in inner else BOTTOM, "restrict"))

    by_id = pres.by_id
    generators = []
    for g in gen_span.outer:
        if g in inner and g in by_id:
            generators.append(by_id[g])
        elif g in inner:
            generators.append(Generator.make(g, g, kind="copy", payload=(gen_span.q[g],)))
        else:
            generators.append(Generator.make(g, g, kind="dead"))
    return Presentation(tuple(generators), tuple(relations), pres.orientation, name or f"{pres.name}_expanded")


def expansion_point_map(pres: Presentation, expanded: Presentation, gen_span: Span, pt: Point) -> Point:
    """Send a point S ⊆ G₀ to its q-preimage within G₁."""
    trueset = frozenset(g for g in gen_span.inner if gen_span.q[g] in pt.trueset)
    return expanded.point(trueset)
