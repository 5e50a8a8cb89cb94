"""
Finite frame presentations ⟨G | R⟩.

A meet term is a frozenset of generator ids (empty = ⊤); a DNF is a frozenset
of meet terms kept as an antichain (empty = ⊥). Relations are sequents
`meet ⊢ DNF`. Points are the subsets of generators satisfying every relation.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from utils.errors import UndeclaredGeneratorError, PresentationError

MeetTerm = FrozenSet[str]
DNF = FrozenSet[MeetTerm]

TOP_TERM: MeetTerm = frozenset()
TOP: DNF = frozenset({TOP_TERM})
BOTTOM: DNF = frozenset()


class PresentationOrientation(str, Enum):
    """Metadata flag recording which lattice reading the presentation documents."""

    OPEN = "open"
    CLOSED = "closed"


# --- DNF algebra -------------------------------------------------------------


def meet(*ids: str) -> MeetTerm:
    return frozenset(ids)


def normalize(terms: Iterable[MeetTerm]) -> DNF:
    """Antichain form: drop every term that contains (is below) another term."""
    unique = sorted(set(terms), key=len)
    kept: List[MeetTerm] = []
    for term in unique:
        if not any(other <= term for other in kept):
            kept.append(term)
    return frozenset(kept)


def dnf_atom(generator_id: str) -> DNF:
    return frozenset({frozenset({generator_id})})


def dnf_of_term(term: Iterable[str]) -> DNF:
    return frozenset({frozenset(term)})


def dnf_join(*dnfs: DNF) -> DNF:
    return normalize(term for d in dnfs for term in d)


def dnf_meet(*dnfs: DNF) -> DNF:
    """Meet with eager distribution over joins."""
    result = TOP
    for d in dnfs:
        result = normalize(a | b for a in result for b in d)
        if not result:
            return BOTTOM
    return result


def dnf_join_all(dnfs: Iterable[DNF]) -> DNF:
    return normalize(term for d in dnfs for term in d)


def dnf_meet_all(dnfs: Iterable[DNF]) -> DNF:
    return dnf_meet(*list(dnfs))


def dnf_holds(dnf: DNF, trueset: FrozenSet[str]) -> bool:
    return any(term <= trueset for term in dnf)


def substitute(dnf: DNF, mapping: Mapping[str, DNF]) -> DNF:
    """Replace every generator by its image and renormalize."""
    return dnf_join_all(dnf_meet_all(mapping[g] for g in term) for term in dnf)


def dnf_generators(dnf: DNF) -> FrozenSet[str]:
    return frozenset(g for term in dnf for g in term)


# --- generators, sequents, presentations ----------------------------------


@dataclass(frozen=True)
class Generator:
    id: str
    display: str = ""
    tags: Tuple[Tuple[str, Any], ...] = ()

    @classmethod
    def make(cls, id: str, display: str = "", **tags: Any) -> "Generator":
        return cls(id, display or id, tuple(sorted(tags.items())))

    def tag(self, key: str, default: Any = None) -> Any:
        for k, v in self.tags:
            if k == key:
                return v
        return default

    @property
    def kind(self) -> Optional[str]:
        return self.tag("kind")

    @property
    def payload(self) -> Tuple[Any, ...]:
        return self.tag("payload", ())


@dataclass(frozen=True)
class Sequent:
    lhs: MeetTerm
    rhs: DNF
    label: str = field(default="", compare=False)

    @classmethod
    def of(cls, lhs: Iterable[str], rhs: Iterable[Iterable[str]], label: str = "") -> "Sequent":
        return cls(frozenset(lhs), normalize(frozenset(t) for t in rhs), label)

    @classmethod
    def with_dnf(cls, lhs: Iterable[str], rhs: DNF, label: str = "") -> "Sequent":
        return cls(frozenset(lhs), normalize(rhs), label)

    def generators(self) -> FrozenSet[str]:
        return self.lhs | dnf_generators(self.rhs)

    def renamed(self, rename: Callable[[str], str]) -> "Sequent":
        return Sequent(
            frozenset(rename(g) for g in self.lhs),
            normalize(frozenset(rename(g) for g in term) for term in self.rhs),
            self.label,
        )

    def holds_in(self, trueset: FrozenSet[str]) -> bool:
        return not self.lhs <= trueset or dnf_holds(self.rhs, trueset)

    def is_trivial(self) -> bool:
        return any(term <= self.lhs for term in self.rhs)

    def __str__(self) -> str:
        return f"{format_term(self.lhs)} ⊢ {format_dnf(self.rhs)}"


def format_term(term: Iterable[str]) -> str:
    ids = sorted(term)
    return " ∧ ".join(ids) if ids else "⊤"


def format_dnf(dnf: DNF) -> str:
    if not dnf:
        return "⊥"
    return " ∨ ".join(format_term(t) if len(t) <= 1 else f"({format_term(t)})" for t in sorted(dnf, key=sorted))


@dataclass(frozen=True)
class Point:
    """A satisfying subset of generators; `mask` is its bitmask in declaration order."""

    trueset: FrozenSet[str]
    mask: int = 0

    def __contains__(self, generator_id: str) -> bool:
        return generator_id in self.trueset

    def __len__(self) -> int:
        return len(self.trueset)


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[Generator, ...]
    relations: Tuple[Sequent, ...] = ()
    orientation: PresentationOrientation = PresentationOrientation.OPEN
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))
        object.__setattr__(self, "orientation", PresentationOrientation(self.orientation))
        ids = [g.id for g in self.generators]
        if len(set(ids)) != len(ids):
            seen = set()
            dupes = [i for i in ids if i in seen or seen.add(i)]
            raise PresentationError(f"duplicate generator ids: {sorted(set(dupes))}")
        declared = set(ids)
        for rel in self.relations:
            for g in rel.generators():
                if g not in declared:
                    raise UndeclaredGeneratorError(g, f"relation {rel}")

    @cached_property
    def index(self) -> Dict[str, int]:
        return {g.id: i for i, g in enumerate(self.generators)}

    @cached_property
    def ids(self) -> Tuple[str, ...]:
        return tuple(g.id for g in self.generators)

    @cached_property
    def by_id(self) -> Dict[str, Generator]:
        return {g.id: g for g in self.generators}

    def __len__(self) -> int:
        return len(self.generators)

    def generator(self, generator_id: str) -> Generator:
        try:
            return self.by_id[generator_id]
        except KeyError:
            raise UndeclaredGeneratorError(generator_id) from None

    def check_ids(self, ids: Iterable[str], where: str = "") -> None:
        for g in ids:
            if g not in self.index:
                raise UndeclaredGeneratorError(g, where)

    def mask_of(self, ids: Iterable[str]) -> int:
        mask = 0
        index = self.index
        for g in ids:
            if g not in index:
                raise UndeclaredGeneratorError(g)
            mask |= 1 << index[g]
        return mask

    def ids_of(self, mask: int) -> FrozenSet[str]:
        return frozenset(g for i, g in enumerate(self.ids) if mask >> i & 1)

    def point(self, trueset: Iterable[str]) -> Point:
        trueset = frozenset(trueset)
        return Point(trueset, self.mask_of(trueset))

    def satisfies(self, trueset: FrozenSet[str]) -> bool:
        return all(rel.holds_in(trueset) for rel in self.relations)

    def first_violation(self, trueset: FrozenSet[str]) -> Optional[Sequent]:
        for rel in self.relations:
            if not rel.holds_in(trueset):
                return rel
        return None

    @cached_property
    def key(self) -> Tuple[Tuple[str, ...], FrozenSet[Sequent]]:
        """Identity used when matching homs: generator ids and relation set."""
        return self.ids, frozenset(self.relations)

    def same_as(self, other: "Presentation") -> bool:
        return self is other or self.key == other.key

    def renamed(self, name: str) -> "Presentation":
        return Presentation(self.generators, self.relations, self.orientation, name)

    def with_orientation(self, orientation: PresentationOrientation) -> "Presentation":
        return Presentation(self.generators, self.relations, orientation, self.name)

    def relation_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for rel in self.relations:
            counts[rel.label] = counts.get(rel.label, 0) + 1
        return counts


def free_presentation(ids: Sequence[str], name: str = "") -> Presentation:
    return Presentation(tuple(Generator.make(i) for i in ids), (), name=name)
