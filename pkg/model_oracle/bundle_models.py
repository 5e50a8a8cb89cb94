"""
Structures and models of a theory over a finite category: one sheaf
action per sort and, per relation symbol, an action-stable set of tuples
of elements lying over a common object.

Interpretation tuples put the base object first, so `prefix = 1`. A
nullary relation is a stable set of 1-tuples of base objects.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from classifier.params import ParameterSet
from internal_cat import (
    FiniteCategory,
    InternalFunctor,
    InternalTransformation,
    SheafAction,
    action_violations,
    enumerate_functors,
    pullback_sheaf,
    sh_of_transformation,
    terminal_category,
)
from internal_cat.random_instances import random_action
from theory_dsl import Theory
from utils.errors import AxiomViolation, ModelError

from .homs import compose_model_homs, enumerate_homs, enumerate_isos, identity_model_hom, invert_model_hom
from .interpret import interpret_formula
from .models import PERModel, enumerate_models

logger = logging.getLogger(__name__)

Element = Hashable
Row = Tuple[Element, ...]


@dataclass(frozen=True, eq=False)
class BundleModel:
    theory: Theory
    base: FiniteCategory
    sorts: Dict[str, SheafAction]
    relations: Dict[str, FrozenSet[Row]]
    name: str = field(default="", compare=False)

    prefix = 1

    def action(self, sort: str) -> SheafAction:
        try:
            return self.sorts[sort]
        except KeyError:
            raise ModelError(f"unknown sort '{sort}'") from None

    def fiber(self, sort: str, obj) -> List[Element]:
        return self.action(sort).fiber(obj)

    def over(self, sort: str, element: Element):
        return self.action(sort).p[element]

    def tuples(self, sorts: Sequence[str]) -> List[Row]:
        """(x, e₁, …, eₙ) with every eᵢ over the object x."""
        rows: List[Row] = []
        for x in self.base.objects:
            for elements in itertools.product(*(self.fiber(sort, x) for sort in sorts)):
                rows.append((x,) + elements)
        return rows

    def relation_tuples(self, name: str) -> FrozenSet[Row]:
        if name not in self.relations:
            raise ModelError(f"unknown relation '{name}'")
        return self.relations[name]

    def row_base(self, sorts: Sequence[str], row: Row):
        """The object a relation tuple lies over."""
        return self.over(sorts[0], row[0]) if sorts else row[0]

    def act_tuple(self, sorts: Sequence[str], row: Row, g) -> Row:
        if not sorts:
            return (self.base.t[g],)
        return tuple(self.action(sort).act(y, g) for sort, y in zip(sorts, row))

    def max_fiber(self) -> int:
        return max((len(self.fiber(sort, x)) for sort in self.theory.sorts for x in self.base.objects), default=0)

    def to_dict(self) -> Dict[str, object]:
        return {
            "base": self.base.name,
            "sorts": {sort: a.to_dict() for sort, a in self.sorts.items()},
            "relations": {name: sorted(repr(row) for row in rows) for name, rows in self.relations.items()},
        }


def orbit_closure(M: BundleModel, relation: str, rows) -> FrozenSet[Row]:
    """The smallest action-stable set of tuples containing `rows`."""
    arity = M.theory.arity(relation)
    seen = set(rows)
    stack = list(seen)
    while stack:
        row = stack.pop()
        for g in M.base.arrows_from(M.row_base(arity, row)):
            image = M.act_tuple(arity, row, g)
            if image not in seen:
                seen.add(image)
                stack.append(image)
    return frozenset(seen)


def bundle_model_violations(M: BundleModel, axioms: bool = True) -> List[AxiomViolation]:
    """Each action valid, relations fiberwise and stable, then the axioms fiberwise."""
    bad: List[AxiomViolation] = []
    for sort in M.theory.sorts:
        if sort not in M.sorts:
            return [AxiomViolation(f"carrier for {sort}", (sort,))]
        bad.extend(AxiomViolation(f"{sort}: {v.equation}", v.witness) for v in action_violations(M.sorts[sort]))
    if bad:
        return bad
    for rel in M.theory.relations:
        rows = M.relations.get(rel.name, frozenset())
        for row in rows:
            over = {M.over(sort, y) for sort, y in zip(rel.arity, row)} if rel.arity else set(row)
            if len(over) != 1 or len(row) != max(len(rel.arity), 1):
                bad.append(AxiomViolation(f"{rel.name} fiberwise", row))
                break
        if bad:
            break
        unstable = orbit_closure(M, rel.name, rows) - rows
        if unstable:
            bad.append(AxiomViolation(f"{rel.name} stable under the action", sorted(unstable, key=repr)[0]))
    if bad or not axioms:
        return bad
    for n, axiom in enumerate(M.theory.axioms):
        missing = interpret_formula(M, axiom.lhs, axiom.context) - interpret_formula(M, axiom.rhs, axiom.context)
        if missing:
            bad.append(AxiomViolation(f"axiom {n}", sorted(missing, key=repr)[0]))
    return bad


def check_bundle_model(M: BundleModel, axioms: bool = True) -> BundleModel:
    violations = bundle_model_violations(M, axioms)
    if violations:
        raise ModelError("not a model over the category: " + ", ".join(v.equation for v in violations))
    return M


# --- base change -------------------------------------------------------------


def base_change(Phi: InternalFunctor, M: BundleModel) -> BundleModel:
    """Φ*M: every carrier pulled back, Rᴹ pulled back along the fibers."""
    sorts = {sort: pullback_sheaf(Phi, a) for sort, a in M.sorts.items()}
    relations = {}
    for rel in M.theory.relations:
        rows = set()
        for x in Phi.source.objects:
            target = Phi.obj(x)
            for row in M.relations.get(rel.name, ()):
                if M.row_base(rel.arity, row) != target:
                    continue
                rows.add(tuple((x, y) for y in row) if rel.arity else (x,))
        relations[rel.name] = frozenset(rows)
    return BundleModel(M.theory, Phi.source, sorts, relations, f"{Phi.name}*{M.name}")


@dataclass(frozen=True, eq=False)
class BundleModelHom:
    source: BundleModel
    target: BundleModel
    maps: Dict[str, Dict[Element, Element]]

    def __eq__(self, other) -> bool:
        return isinstance(other, BundleModelHom) and self.maps == other.maps

    def __hash__(self) -> int:
        return hash(tuple(sorted((sort, frozenset(m.items())) for sort, m in self.maps.items())))

    def apply_tuple(self, sorts: Sequence[str], row: Row) -> Row:
        if not sorts:
            return row
        return tuple(self.maps[sort][y] for sort, y in zip(sorts, row))


def bundle_hom_violations(f: BundleModelHom) -> List[AxiomViolation]:
    M, N = f.source, f.target
    H = M.base
    for sort in M.theory.sorts:
        A, B, table = M.action(sort), N.action(sort), f.maps.get(sort, {})
        for x in A.elements:
            y = table.get(x)
            if y not in B.p or B.p[y] != A.p[x]:
                return [AxiomViolation(f"{sort}-map over the base", (x,))]
        for x in A.elements:
            for g in H.arrows_from(A.p[x]):
                if table[A.act(x, g)] != B.act(table[x], g):
                    return [AxiomViolation(f"{sort}-map equivariant", (x, g))]
    for rel in M.theory.relations:
        target = N.relations.get(rel.name, frozenset())
        for row in M.relations.get(rel.name, ()):
            if f.apply_tuple(rel.arity, row) not in target:
                return [AxiomViolation(f"preserves {rel.name}", row)]
    return []


def transformation_action(tau: InternalTransformation, M: BundleModel) -> BundleModelHom:
    """τ*: Φ*M → Ψ*M acting on the fiber over x by the action of τ(x)."""
    source = base_change(tau.source, M)
    target = base_change(tau.target, M)
    maps = {sort: dict(sh_of_transformation(tau, a).mapping) for sort, a in M.sorts.items()}
    return BundleModelHom(source, target, maps)


# --- hom and iso search ----------------------------------------------------------


def _equivariant_maps(A: SheafAction, B: SheafAction, injective: bool) -> Iterator[Dict[Element, Element]]:
    """Every equivariant fiber-preserving map A → B; a choice is propagated along its orbit."""
    H = A.base

    def propagate(mapping: Dict[Element, Element], used: set, x: Element, y: Element) -> bool:
        stack = [(x, y)]
        while stack:
            u, v = stack.pop()
            if u in mapping:
                if mapping[u] != v:
                    return False
                continue
            if B.p[v] != A.p[u] or (injective and v in used):
                return False
            mapping[u] = v
            used.add(v)
            for g in H.arrows_from(A.p[u]):
                stack.append((A.act(u, g), B.act(v, g)))
        return True

    def search(mapping: Dict[Element, Element], used: set) -> Iterator[Dict[Element, Element]]:
        pending = [x for x in A.elements if x not in mapping]
        if not pending:
            yield mapping
            return
        x = pending[0]
        for y in B.fiber(A.p[x]):
            trial, trial_used = dict(mapping), set(used)
            if propagate(trial, trial_used, x, y):
                yield from search(trial, trial_used)

    yield from search({}, set())


def _hom_search(M: BundleModel, N: BundleModel, injective: bool) -> Iterator[BundleModelHom]:
    sorts = M.theory.sorts
    choices = [list(_equivariant_maps(M.action(s), N.action(s), injective)) for s in sorts]
    for picked in itertools.product(*choices):
        f = BundleModelHom(M, N, dict(zip(sorts, picked)))
        if not bundle_hom_violations(f):
            yield f


def enumerate_bundle_homs(M: BundleModel, N: BundleModel) -> List[BundleModelHom]:
    return list(_hom_search(M, N, injective=False))


def _reflects(f: BundleModelHom) -> bool:
    M, N = f.source, f.target
    for rel in M.theory.relations:
        images = {f.apply_tuple(rel.arity, row) for row in M.relations.get(rel.name, ())}
        if images != set(N.relations.get(rel.name, ())):
            return False
    return True


def find_bundle_model_iso(M: BundleModel, N: BundleModel) -> Optional[BundleModelHom]:
    """An isomorphism of models over the same base, or None."""
    for sort in M.theory.sorts:
        for x in M.base.objects:
            if len(M.fiber(sort, x)) != len(N.fiber(sort, x)):
                return None
    for f in _hom_search(M, N, injective=True):
        if _reflects(f):
            return f
    return None


# --- constructions ---------------------------------------------------------------


def set_model_as_bundle(model: PERModel) -> BundleModel:
    """A set-model as a model over the terminal category."""
    T = terminal_category()
    (star,) = T.objects
    unit = T.e[star]
    sorts = {}
    for sort in model.theory.sorts:
        elements = model.classes(sort)
        sorts[sort] = SheafAction(T, elements, {c: star for c in elements}, {(c, unit): c for c in elements}, sort)
    relations = {
        rel.name: model.relation_tuples(rel.name) if rel.arity else frozenset((star,) for _ in model.relation_tuples(rel.name))
        for rel in model.theory.relations
    }
    return BundleModel(model.theory, T, sorts, relations, "set-model")


def constant_bundle_model(H: FiniteCategory, model: PERModel) -> BundleModel:
    """The set-model pulled back to every object of H."""
    T = terminal_category()
    (star,) = T.objects
    bang = InternalFunctor(H, T, {x: star for x in H.objects}, {f: T.e[star] for f in H.arrows}, "!")
    return base_change(bang, set_model_as_bundle(model))


def model_category(theory: Theory, params: ParameterSet, core: bool = False) -> FiniteCategory:
    """Set-models on subquotients of P with their homomorphisms, or only the isomorphisms with `core`."""
    models = tuple(enumerate_models(theory, params))
    find = enumerate_isos if core else enumerate_homs
    arrows = tuple(h for M in models for N in models for h in find(M, N))
    s = {h: h.source for h in arrows}
    t = {h: h.target for h in arrows}
    e = {M: identity_model_hom(M) for M in models}
    m = {}
    for f in arrows:
        for g in arrows:
            if f.target == g.source:
                m[(f, g)] = compose_model_homs(f, g)
    i = {h: invert_model_hom(h) for h in arrows} if core else None
    name = "models(core)" if core else "models"
    logger.debug(f"{name}: {len(models)} objects, {len(arrows)} arrows")
    return FiniteCategory(models, arrows, s, t, e, m, i, name)


def functor_as_bundle_model(theory: Theory, F: InternalFunctor, name: str = "") -> BundleModel:
    """A functor K → model_category as a model over K: the fiber over x is the model F(x)."""
    K = F.source
    sorts = {}
    for sort in theory.sorts:
        elements = tuple((x, c) for x in K.objects for c in F.obj(x).classes(sort))
        p = {y: y[0] for y in elements}
        beta = {
            ((x, c), g): (K.t[g], F(g).apply(sort, c)) for x, c in elements for g in K.arrows_from(x)
        }
        sorts[sort] = SheafAction(K, elements, p, beta, sort)
    relations = {}
    for rel in theory.relations:
        rows = set()
        for x in K.objects:
            tuples = F.obj(x).relation_tuples(rel.name)
            if rel.arity:
                rows.update(tuple((x, c) for c in row) for row in tuples)
            elif tuples:
                rows.add((x,))
        relations[rel.name] = frozenset(rows)
    return BundleModel(theory, K, sorts, relations, name or F.name)


def enumerate_models_over(
    K: FiniteCategory, theory: Theory, params: ParameterSet, core: bool = False
) -> List[BundleModel]:
    """
    One model over K per functor into model_category. Every model over K
    whose fibers fit in P is isomorphic to one of them.
    """
    C = model_category(theory, params, core)
    functors = enumerate_functors(K, C)
    logger.debug(f"{len(functors)} models of {theory.name} over {K.name}")
    return [functor_as_bundle_model(theory, F, f"model {n}") for n, F in enumerate(functors)]


def random_bundle_model(
    rng: np.random.Generator, H: FiniteCategory, theory: Theory, max_pieces: int = 2, density: float = 0.4
) -> BundleModel:
    """
    A random Σ-structure over H: random actions, and relations generated as
    orbit closures of random fiberwise tuples. Axioms are not imposed.
    """
    sorts = {sort: random_action(rng, H, max_pieces) for sort in theory.sorts}
    draft = BundleModel(theory, H, sorts, {rel.name: frozenset() for rel in theory.relations}, "random")
    relations = {}
    for rel in theory.relations:
        rows = [row[1:] if rel.arity else row for row in draft.tuples(rel.arity)]
        seeds = [row for row in rows if rng.random() < density]
        relations[rel.name] = orbit_closure(draft, rel.name, seeds)
    return BundleModel(theory, H, sorts, relations, "random")


def is_bundle_model_iso(f: BundleModelHom) -> bool:
    """Bijective on every carrier and reflecting every relation."""
    for sort, table in f.maps.items():
        if len(set(table.values())) != len(table) or len(table) != len(f.target.action(sort).elements):
            return False
    return not bundle_hom_violations(f) and _reflects(f)
