"""
Abstract syntax of finitary relational theories.

Formulas live in the coherent fragment: relation atoms, equality, true/false,
finite conjunction and disjunction, and existential quantification. Every
value here is an immutable dataclass, so theories can be shared freely.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple, Union

from utils.errors import TheoryValidationError


class Orientation(str, Enum):
    """Which bundle semantics the theory is read in: local homeomorphisms or proper separated maps."""

    LH = "LH"
    PS = "PS"


@dataclass(frozen=True)
class Rel:
    name: str
    args: Tuple[str, ...]


@dataclass(frozen=True)
class Eq:
    sort: str
    left: str
    right: str


@dataclass(frozen=True)
class Tru:
    pass


@dataclass(frozen=True)
class Fals:
    pass


@dataclass(frozen=True)
class And:
    items: Tuple["Formula", ...]

    def __post_init__(self):
        if len(self.items) < 2:
            raise TheoryValidationError("And needs at least two conjuncts; use conj()")


@dataclass(frozen=True)
class Or:
    items: Tuple["Formula", ...]

    def __post_init__(self):
        if len(self.items) < 2:
            raise TheoryValidationError("Or needs at least two disjuncts; use disj()")


@dataclass(frozen=True)
class Exists:
    var: str
    sort: str
    body: "Formula"


Formula = Union[Rel, Eq, Tru, Fals, And, Or, Exists]


def conj(*items: Formula) -> Formula:
    """Conjunction that collapses the degenerate cases and drops literal `true`."""
    kept = [item for item in items if not isinstance(item, Tru)]
    if any(isinstance(item, Fals) for item in kept):
        return Fals()
    if not kept:
        return Tru()
    if len(kept) == 1:
        return kept[0]
    return And(tuple(kept))


def disj(*items: Formula) -> Formula:
    kept = [item for item in items if not isinstance(item, Fals)]
    if any(isinstance(item, Tru) for item in kept):
        return Tru()
    if not kept:
        return Fals()
    if len(kept) == 1:
        return kept[0]
    return Or(tuple(kept))


def free_variables(formula: Formula) -> List[str]:
    """Free variables in order of first occurrence."""
    seen: List[str] = []

    def visit(f: Formula, bound: frozenset) -> None:
        if isinstance(f, Rel):
            names = f.args
        elif isinstance(f, Eq):
            names = (f.left, f.right)
        elif isinstance(f, (And, Or)):
            for item in f.items:
                visit(item, bound)
            return
        elif isinstance(f, Exists):
            visit(f.body, bound | {f.var})
            return
        else:
            return
        for name in names:
            if name not in bound and name not in seen:
                seen.append(name)

    visit(formula, frozenset())
    return seen


def subformulas(formula: Formula) -> Iterator[Formula]:
    yield formula
    if isinstance(formula, (And, Or)):
        for item in formula.items:
            yield from subformulas(item)
    elif isinstance(formula, Exists):
        yield from subformulas(formula.body)


@dataclass(frozen=True)
class RelationSymbol:
    name: str
    arity: Tuple[str, ...]


@dataclass(frozen=True)
class Signature:
    sorts: Tuple[str, ...]
    relations: Tuple[RelationSymbol, ...] = ()

    def __post_init__(self):
        if len(set(self.sorts)) != len(self.sorts):
            raise TheoryValidationError(f"duplicate sort names in {self.sorts}")
        names = [r.name for r in self.relations]
        if len(set(names)) != len(names):
            raise TheoryValidationError(f"duplicate relation names in {names}")
        for rel in self.relations:
            for sort in rel.arity:
                if sort not in self.sorts:
                    raise TheoryValidationError(f"relation {rel.name} uses unknown sort '{sort}'")

    def relation(self, name: str) -> RelationSymbol:
        for rel in self.relations:
            if rel.name == name:
                return rel
        raise TheoryValidationError(f"unknown relation '{name}'")


Context = Tuple[Tuple[str, str], ...]


@dataclass(frozen=True)
class Axiom:
    """A sequent lhs ⊢ rhs in an explicit, ordered variable context."""

    context: Context
    lhs: Formula
    rhs: Formula

    def context_sorts(self) -> Tuple[str, ...]:
        return tuple(sort for _, sort in self.context)


@dataclass(frozen=True)
class Theory:
    name: str
    signature: Signature
    axioms: Tuple[Axiom, ...] = ()
    orientation: Orientation = Orientation.LH
    _relation_index: Dict[str, RelationSymbol] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_relation_index", {r.name: r for r in self.signature.relations})
        for axiom in self.axioms:
            check_axiom(self.signature, axiom)

    @property
    def sorts(self) -> Tuple[str, ...]:
        return self.signature.sorts

    @property
    def relations(self) -> Tuple[RelationSymbol, ...]:
        return self.signature.relations

    def arity(self, relation: str) -> Tuple[str, ...]:
        if relation not in self._relation_index:
            raise TheoryValidationError(f"unknown relation '{relation}'")
        return self._relation_index[relation].arity

    def with_orientation(self, orientation: Orientation) -> "Theory":
        return Theory(self.name, self.signature, self.axioms, Orientation(orientation))


def check_formula(signature: Signature, formula: Formula, scope: Dict[str, str]) -> None:
    """Raise TheoryValidationError unless `formula` is well-scoped and well-sorted."""
    if isinstance(formula, (Tru, Fals)):
        return
    if isinstance(formula, Rel):
        rel = signature.relation(formula.name)
        if len(rel.arity) != len(formula.args):
            raise TheoryValidationError(
                f"arity mismatch: {formula.name} expects {len(rel.arity)} arguments, got {len(formula.args)}"
            )
        for var, sort in zip(formula.args, rel.arity):
            if var not in scope:
                raise TheoryValidationError(f"unbound variable '{var}' in {formula.name}(...)")
            if scope[var] != sort:
                raise TheoryValidationError(
                    f"variable '{var}' has sort {scope[var]} but {formula.name} expects {sort}"
                )
        return
    if isinstance(formula, Eq):
        if formula.sort not in signature.sorts:
            raise TheoryValidationError(f"unknown sort '{formula.sort}'")
        for var in (formula.left, formula.right):
            if var not in scope:
                raise TheoryValidationError(f"unbound variable '{var}' in equality")
            if scope[var] != formula.sort:
                raise TheoryValidationError(f"equality between variables of different sorts ({var})")
        return
    if isinstance(formula, (And, Or)):
        for item in formula.items:
            check_formula(signature, item, scope)
        return
    if isinstance(formula, Exists):
        if formula.sort not in signature.sorts:
            raise TheoryValidationError(f"unknown sort '{formula.sort}'")
        check_formula(signature, formula.body, {**scope, formula.var: formula.sort})
        return
    raise TheoryValidationError(f"not a formula: {formula!r}")


def check_axiom(signature: Signature, axiom: Axiom) -> None:
    names = [var for var, _ in axiom.context]
    if len(set(names)) != len(names):
        raise TheoryValidationError(f"duplicate variable in context {names}")
    scope: Dict[str, str] = {}
    for var, sort in axiom.context:
        if sort not in signature.sorts:
            raise TheoryValidationError(f"unknown sort '{sort}' in context")
        scope[var] = sort
    check_formula(signature, axiom.lhs, scope)
    check_formula(signature, axiom.rhs, scope)


def formula_context(formula: Formula, scope: Dict[str, str]) -> Context:
    """The free variables of `formula` typed from `scope`, in first-occurrence order."""
    return tuple((var, scope[var]) for var in free_variables(formula))


def lookup_sort(context: Context, var: str) -> Optional[str]:
    for name, sort in context:
        if name == var:
            return sort
    return None
