"""
Finite models of a theory carried by subquotients of the parameter set.

A model is stored exactly as the object layer sees it: one partial
equivalence relation per sort and, per relation symbol, the set of
parameter tuples in it (saturated under the PERs). Elements of a sort are
its classes, written as tuples of parameter tokens in parameter order.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy.utilities.iterables import multiset_partitions

from classifier.params import ParameterSet, rel_id, sim_id
from theory_dsl import Theory
from utils.errors import AxiomViolation, ModelError

from .interpret import interpret_formula

logger = logging.getLogger(__name__)

Cls = Tuple[str, ...]
PER = FrozenSet[Tuple[str, str]]


@dataclass(frozen=True)
class PERModel:
    """
    `sims` and `rels` are aligned with the theory's sorts and relations.
    Equality and hashing only look at the tables.
    """

    theory: Theory = field(compare=False, repr=False)
    params: ParameterSet = field(compare=False, repr=False)
    sims: Tuple[PER, ...]
    rels: Tuple[FrozenSet[Tuple[str, ...]], ...]

    prefix = 0

    @classmethod
    def from_classes(
        cls,
        theory: Theory,
        params: ParameterSet,
        classes: Mapping[str, Iterable[Iterable[str]]],
        relations: Optional[Mapping[str, Iterable[Sequence[str]]]] = None,
    ) -> "PERModel":
        """
        Build from explicit classes per sort and relation tuples given by
        representatives; the tuples are saturated under the classes.
        """
        relations = relations or {}
        sims = []
        for sort in theory.sorts:
            pairs = set()
            for block in classes.get(sort, ()):
                block = tuple(block)
                pairs.update(itertools.product(block, repeat=2))
            sims.append(frozenset(pairs))
        draft = cls(theory, params, tuple(sims), tuple(frozenset() for _ in theory.relations))
        rels = []
        for rel in theory.relations:
            tuples = set()
            for args in relations.get(rel.name, ()):
                blocks = [draft.class_of(sort, p) for sort, p in zip(rel.arity, args)]
                if any(b is None for b in blocks):
                    raise ModelError(f"tuple {tuple(args)} of {rel.name} leaves the support")
                tuples.update(itertools.product(*blocks))
            rels.append(frozenset(tuples))
        return cls(theory, params, tuple(sims), tuple(rels))

    def _sort_index(self, sort: str) -> int:
        try:
            return self.theory.sorts.index(sort)
        except ValueError:
            raise ModelError(f"unknown sort '{sort}'") from None

    def _relation_index(self, name: str) -> int:
        for k, rel in enumerate(self.theory.relations):
            if rel.name == name:
                return k
        raise ModelError(f"unknown relation '{name}'")

    def sim(self, sort: str) -> PER:
        return self.sims[self._sort_index(sort)]

    def support(self, sort: str) -> Tuple[str, ...]:
        per = self.sim(sort)
        return tuple(p for p in self.params.tokens if (p, p) in per)

    @cached_property
    def _blocks(self) -> Dict[str, Tuple[Cls, ...]]:
        blocks: Dict[str, Tuple[Cls, ...]] = {}
        for sort, per in zip(self.theory.sorts, self.sims):
            seen: List[Cls] = []
            for p in self.params.tokens:
                if (p, p) in per and not any(p in block for block in seen):
                    seen.append(tuple(q for q in self.params.tokens if (p, q) in per))
            blocks[sort] = tuple(seen)
        return blocks

    def classes(self, sort: str) -> Tuple[Cls, ...]:
        if sort not in self._blocks:
            raise ModelError(f"unknown sort '{sort}'")
        return self._blocks[sort]

    def class_of(self, sort: str, p: str) -> Optional[Cls]:
        for block in self.classes(sort):
            if p in block:
                return block
        return None

    def relation_params(self, name: str) -> FrozenSet[Tuple[str, ...]]:
        return self.rels[self._relation_index(name)]

    def relation_tuples(self, name: str) -> FrozenSet[Tuple[Cls, ...]]:
        """Rᴹ as tuples of classes."""
        arity = self.theory.arity(name)
        return frozenset(
            tuple(self.class_of(sort, p) for sort, p in zip(arity, args)) for args in self.relation_params(name)
        )

    def tuples(self, sorts: Sequence[str]) -> List[Tuple[Cls, ...]]:
        return list(itertools.product(*(self.classes(sort) for sort in sorts)))

    @property
    def is_empty(self) -> bool:
        return all(not per for per in self.sims)

    def size(self, sort: str) -> int:
        return len(self.classes(sort))

    def order_key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Per-sort PER bitmasks (bit p·|P|+q), then relation bitmasks."""
        index = {p: k for k, p in enumerate(self.params.tokens)}
        n = len(index)
        per_masks = tuple(sum(1 << (index[p] * n + index[q]) for p, q in per) for per in self.sims)
        rel_masks = []
        for tuples in self.rels:
            mask = 0
            for args in tuples:
                position = 0
                for p in args:
                    position = position * n + index[p]
                mask |= 1 << position
            rel_masks.append(mask)
        return per_masks, tuple(rel_masks)

    def trueset(self) -> FrozenSet[str]:
        """The object-layer generators true at this model."""
        ids = {sim_id(sort, p, q) for sort, per in zip(self.theory.sorts, self.sims) for p, q in per}
        ids.update(rel_id(rel.name, args) for rel, tuples in zip(self.theory.relations, self.rels) for args in tuples)
        return frozenset(ids)

    def describe(self) -> str:
        if self.is_empty and not any(self.rels):
            return "empty model"
        parts = []
        for sort in self.theory.sorts:
            blocks = " | ".join("{" + ",".join(block) + "}" for block in self.classes(sort))
            parts.append(f"{sort}: {blocks or '∅'}")
        for rel in self.theory.relations:
            items = sorted(self.relation_tuples(rel.name))
            rendered = ", ".join("(" + ", ".join("{" + ",".join(c) + "}" for c in t) + ")" for t in items)
            parts.append(f"{rel.name}: {rendered or '∅'}")
        return "; ".join(parts)

    def to_dict(self) -> Dict[str, object]:
        return {
            "classes": {sort: [list(c) for c in self.classes(sort)] for sort in self.theory.sorts},
            "relations": {
                rel.name: sorted(list(args) for args in tuples) for rel, tuples in zip(self.theory.relations, self.rels)
            },
        }


# --- validation ---------------------------------------------------------------


def model_violations(model: PERModel, axioms: bool = True) -> List[AxiomViolation]:
    """PER laws, well-definedness of each relation on classes, then the theory axioms."""
    bad: List[AxiomViolation] = []
    for sort, per in zip(model.theory.sorts, model.sims):
        for p, q in per:
            if (q, p) not in per:
                bad.append(AxiomViolation(f"symmetry of ∼{sort}", (p, q)))
                break
        for (p, q), (q2, r) in itertools.product(per, repeat=2):
            if q == q2 and (p, r) not in per:
                bad.append(AxiomViolation(f"transitivity of ∼{sort}", (p, q, r)))
                break
    if bad:
        return bad
    for rel, tuples in zip(model.theory.relations, model.rels):
        for args in tuples:
            blocks = [model.class_of(sort, p) for sort, p in zip(rel.arity, args)]
            if any(b is None for b in blocks):
                bad.append(AxiomViolation(f"strictness of {rel.name}", args))
                break
            if not set(itertools.product(*blocks)) <= tuples:
                bad.append(AxiomViolation(f"stability of {rel.name}", args))
                break
    if bad or not axioms:
        return bad
    for n, axiom in enumerate(model.theory.axioms):
        lhs = interpret_formula(model, axiom.lhs, axiom.context)
        rhs = interpret_formula(model, axiom.rhs, axiom.context)
        missing = sorted(lhs - rhs)
        if missing:
            bad.append(AxiomViolation(f"axiom {n}", missing[0]))
    return bad


def check_model(model: PERModel) -> PERModel:
    violations = model_violations(model)
    if violations:
        raise ModelError(f"not a model of {model.theory.name}: " + ", ".join(v.equation for v in violations))
    return model


# --- enumeration --------------------------------------------------------------


def partial_equivalences(tokens: Sequence[str]) -> List[PER]:
    """Every PER on `tokens`, i.e. every partition of every subset."""
    pers: List[PER] = [frozenset()]
    for size in range(1, len(tokens) + 1):
        for subset in itertools.combinations(tokens, size):
            for blocks in multiset_partitions(list(subset)):
                pers.append(frozenset(pair for block in blocks for pair in itertools.product(block, repeat=2)))
    return pers


def _structures(theory: Theory, params: ParameterSet) -> Iterator[PERModel]:
    per_choices = partial_equivalences(params.tokens)
    empty = tuple(frozenset() for _ in theory.relations)
    for sims in itertools.product(per_choices, repeat=len(theory.sorts)):
        shell = PERModel(theory, params, tuple(sims), empty)
        options = []
        for rel in theory.relations:
            cells = shell.tuples(rel.arity)
            options.append(
                [
                    frozenset(args for cell in chosen for args in itertools.product(*cell))
                    for size in range(len(cells) + 1)
                    for chosen in itertools.combinations(cells, size)
                ]
            )
        for rels in itertools.product(*options):
            yield PERModel(theory, params, tuple(sims), tuple(rels))


def enumerate_models(theory: Theory, params: ParameterSet) -> List[PERModel]:
    """All models of `theory` carried by subquotients of `params`, in canonical order."""
    models = [m for m in _structures(theory, params) if not model_violations(m)]
    models.sort(key=PERModel.order_key)
    logger.debug(f"{theory.name} over |P| = {len(params)}: {len(models)} models")
    return models
