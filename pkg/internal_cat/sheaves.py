"""
Sheaves over a finite category, i.e. actions (A, p, β), and the equivalent
description as discrete opfibrations.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Optional, Tuple

from utils.errors import ActionAxiomError, AxiomViolation, CategoryAxiomError

from .category import Arrow, FiniteCategory, Obj
from .functors import InternalFunctor, InternalTransformation, functor_violations

logger = logging.getLogger(__name__)

Element = Hashable

ACTION_TARGET = "p∘β = t∘π₂"
ACTION_ASSOC = "β∘(β × id) = β∘(id × m)"
ACTION_UNIT = "β∘(id, e∘p) = id"


@dataclass(frozen=True)
class SheafAction:
    """A finite bundle p: A → H₀ with an action β: A ×_{H₀} H₁ → A."""

    base: FiniteCategory
    elements: Tuple[Element, ...]
    p: Dict[Element, Obj]
    beta: Dict[Tuple[Element, Arrow], Element]
    name: str = field(default="", compare=False)

    def act(self, x: Element, g: Arrow) -> Element:
        return self.beta[(x, g)]

    def fiber(self, obj: Obj) -> List[Element]:
        return [x for x in self.elements if self.p[x] == obj]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "elements": [repr(x) for x in self.elements],
            "p": {repr(x): repr(o) for x, o in self.p.items()},
            "beta": [[repr(x), repr(g), repr(y)] for (x, g), y in self.beta.items()],
        }


def action_violations(a: SheafAction) -> List[AxiomViolation]:
    H = a.base
    elements = set(a.elements)
    for x in a.elements:
        if a.p.get(x) not in H.object_index:
            return [AxiomViolation("p total", (x,))]
    for x in a.elements:
        for g in H.arrows_from(a.p[x]):
            if a.beta.get((x, g)) not in elements:
                return [AxiomViolation("β total", (x, g))]

    bad: List[AxiomViolation] = []
    for x in a.elements:
        for g in H.arrows_from(a.p[x]):
            if a.p[a.beta[(x, g)]] != H.t[g]:
                bad.append(AxiomViolation(ACTION_TARGET, (x, g)))
                break
        else:
            continue
        break
    if bad:
        return bad
    for x in a.elements:
        if a.beta[(x, H.e[a.p[x]])] != x:
            bad.append(AxiomViolation(ACTION_UNIT, (x,)))
            break
    for x in a.elements:
        found = None
        for g in H.arrows_from(a.p[x]):
            for h in H.arrows_from(H.t[g]):
                if a.beta[(a.beta[(x, g)], h)] != a.beta[(x, H.m[(g, h)])]:
                    found = (x, g, h)
                    break
            if found:
                break
        if found:
            bad.append(AxiomViolation(ACTION_ASSOC, found))
            break
    return bad


def check_action(a: SheafAction) -> SheafAction:
    violations = action_violations(a)
    if violations:
        raise ActionAxiomError(violations)
    return a


@dataclass(frozen=True)
class DiscreteOpfibration:
    functor: InternalFunctor

    @property
    def total(self) -> FiniteCategory:
        return self.functor.source

    @property
    def base(self) -> FiniteCategory:
        return self.functor.target


def dofib_violations(X: DiscreteOpfibration) -> List[AxiomViolation]:
    """(s, Φ₁): X₁ → X₀ ×_{H₀} H₁ must be a bijection."""
    F = X.functor
    bad = functor_violations(F)
    if bad:
        return bad
    T, H = F.source, F.target
    seen = {}
    for f in T.arrows:
        key = (T.s[f], F(f))
        if key in seen:
            return [AxiomViolation("(s, Φ₁) injective", (seen[key], f))]
        seen[key] = f
    for x in T.objects:
        for g in H.arrows_from(F.obj(x)):
            if (x, g) not in seen:
                return [AxiomViolation("(s, Φ₁) surjective", (x, g))]
    return []


def check_dofib(X: DiscreteOpfibration) -> DiscreteOpfibration:
    violations = dofib_violations(X)
    if violations:
        raise CategoryAxiomError(violations, what="discrete opfibration")
    return X


def action_to_dofib(a: SheafAction) -> DiscreteOpfibration:
    """Arrows (x, g) with p(x) = s(g), s(x, g) = x, t(x, g) = β(x, g)."""
    H = a.base
    arrows = tuple((x, g) for x in a.elements for g in H.arrows_from(a.p[x]))
    s = {xg: xg[0] for xg in arrows}
    t = {(x, g): a.beta[(x, g)] for x, g in arrows}
    e = {x: (x, H.e[a.p[x]]) for x in a.elements}
    m = {}
    for x, g in arrows:
        y = t[(x, g)]
        for h in H.arrows_from(H.t[g]):
            m[((x, g), (y, h))] = (x, H.m[(g, h)])
    i = None
    if H.i is not None:
        i = {(x, g): (a.beta[(x, g)], H.i[g]) for x, g in arrows}
    total = FiniteCategory(a.elements, arrows, s, t, e, m, i, f"∫{a.name}" if a.name else "total")
    F = InternalFunctor(total, H, dict(a.p), {xg: xg[1] for xg in arrows}, "projection")
    return DiscreteOpfibration(F)


def dofib_to_action(X: DiscreteOpfibration, name: str = "") -> SheafAction:
    F = X.functor
    T = F.source
    beta = {}
    for f in T.arrows:
        beta[(T.s[f], F(f))] = T.t[f]
    return SheafAction(F.target, T.objects, dict(F.on_objects), beta, name)


# --- pullback and morphisms -------------------------------------------------


def pullback_sheaf(Phi: InternalFunctor, a: SheafAction) -> SheafAction:
    """
    Φ*A over H: elements (h₀, y) with Φ₀(h₀) = p(y), acted on by
    β′((x, y), h) = (t h, β(y, Φ₁ h)).
    """
    H = Phi.source
    elements = tuple((x, y) for x in H.objects for y in a.fiber(Phi.obj(x)))
    p = {xy: xy[0] for xy in elements}
    beta = {}
    for x, y in elements:
        for h in H.arrows_from(x):
            beta[((x, y), h)] = (H.t[h], a.beta[(y, Phi(h))])
    return SheafAction(H, elements, p, beta, f"{Phi.name}*{a.name}")


def pullback_dofib(Phi: InternalFunctor, X: DiscreteOpfibration) -> DiscreteOpfibration:
    return action_to_dofib(pullback_sheaf(Phi, dofib_to_action(X)))


@dataclass(frozen=True)
class SheafMorphism:
    """A fiber-preserving map A → B commuting with the actions."""

    source: SheafAction
    target: SheafAction
    mapping: Dict[Element, Element]


def sheaf_morphism_violations(f: SheafMorphism) -> List[AxiomViolation]:
    A, B = f.source, f.target
    H = A.base
    for x in A.elements:
        y = f.mapping.get(x)
        if y not in B.p:
            return [AxiomViolation("map total", (x,))]
        if B.p[y] != A.p[x]:
            return [AxiomViolation("q∘f = p", (x,))]
    for x in A.elements:
        for g in H.arrows_from(A.p[x]):
            if f.mapping[A.beta[(x, g)]] != B.beta[(f.mapping[x], g)]:
                return [AxiomViolation("f∘β = β∘(f × id)", (x, g))]
    return []


def sh_of_transformation(tau: InternalTransformation, a: SheafAction) -> SheafMorphism:
    """
    The component at A of Sh(τ): Φ*A → Ψ*A for τ: Φ ⇒ Ψ, sending (x, y) to
    (x, β(y, τ x)).
    """
    Phi, Psi = tau.source, tau.target
    source = pullback_sheaf(Phi, a)
    target = pullback_sheaf(Psi, a)
    mapping = {(x, y): (x, a.beta[(y, tau(x))]) for x, y in source.elements}
    return SheafMorphism(source, target, mapping)


# --- isomorphism search -----------------------------------------------------


def find_action_iso(A: SheafAction, B: SheafAction) -> Optional[Dict[Element, Element]]:
    """
    An isomorphism of actions over the same base, or None.

    Fibers are matched by cardinality first; a guess x ↦ y is propagated along
    the orbit of x before backtracking.
    """
    H = A.base
    for obj in H.objects:
        if len(A.fiber(obj)) != len(B.fiber(obj)):
            return None
    if len(A.elements) != len(B.elements):
        return None

    def propagate(mapping: Dict[Element, Element], used: set, x: Element, y: Element) -> bool:
        stack = [(x, y)]
        while stack:
            u, v = stack.pop()
            if u in mapping:
                if mapping[u] != v:
                    return False
                continue
            if v in used or B.p[v] != A.p[u]:
                return False
            mapping[u] = v
            used.add(v)
            for g in H.arrows_from(A.p[u]):
                stack.append((A.beta[(u, g)], B.beta[(v, g)]))
        return True

    def search(mapping: Dict[Element, Element], used: set) -> Optional[Dict[Element, Element]]:
        pending = [x for x in A.elements if x not in mapping]
        if not pending:
            return mapping
        x = pending[0]
        for y in B.fiber(A.p[x]):
            if y in used:
                continue
            trial, trial_used = dict(mapping), set(used)
            if propagate(trial, trial_used, x, y):
                found = search(trial, trial_used)
                if found is not None:
                    return found
        return None

    result = search({}, set())
    if result is not None and sheaf_morphism_violations(SheafMorphism(A, B, result)):
        logger.debug("iso candidate rejected by morphism check")
        return None
    return result
