"""
Descent of discrete opfibrations along fully faithful, object-surjective functors.
"""

import logging
from dataclasses import dataclass
from typing import Dict

from utils.errors import DescentError

from .category import Arrow, Obj
from .functors import InternalFunctor, is_fully_faithful, is_surjective_on_objects
from .sheaves import (
    DiscreteOpfibration,
    Element,
    SheafAction,
    SheafMorphism,
    action_to_dofib,
    dofib_to_action,
    dofib_violations,
    pullback_sheaf,
    sheaf_morphism_violations,
)

logger = logging.getLogger(__name__)


class _UnionFind:
    def __init__(self, items):
        self.order = {x: k for k, x in enumerate(items)}
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        # the earlier element stays the root so representatives are stable
        if self.order[rx] < self.order[ry]:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry


@dataclass(frozen=True)
class DescentResult:
    descended: DiscreteOpfibration
    action: SheafAction
    witness: Dict[Element, Element]
    """x ↦ (p x, [x]): the isomorphism X ≅ Φ*(descended)."""


def _unit_arrows(Phi: InternalFunctor) -> Dict[tuple, Arrow]:
    """u_{a,b}: the unique arrow a → b over id_{Φ₀ b}."""
    H, K = Phi.source, Phi.target
    u = {}
    for a in H.objects:
        for b in H.objects:
            if Phi.obj(a) != Phi.obj(b):
                continue
            over = [f for f in H.hom(a, b) if Phi(f) == K.e[Phi.obj(b)]]
            if len(over) != 1:
                raise DescentError(f"no unique arrow {a!r} → {b!r} over an identity")
            u[(a, b)] = over[0]
    return u


def descend_dofib(Phi: InternalFunctor, X: DiscreteOpfibration) -> DescentResult:
    if not is_fully_faithful(Phi):
        raise DescentError("functor is not fully faithful")
    if not is_surjective_on_objects(Phi):
        raise DescentError("functor is not surjective on objects")
    if X.base is not Phi.source and X.base != Phi.source:
        raise DescentError("opfibration does not live over the functor's source")
    problems = dofib_violations(X)
    if problems:
        raise DescentError(f"not a discrete opfibration: {problems[0].equation}")

    H, K = Phi.source, Phi.target
    A = dofib_to_action(X)
    u = _unit_arrows(Phi)

    uf = _UnionFind(A.elements)
    for x in A.elements:
        a = A.p[x]
        for b in H.objects:
            if (a, b) in u:
                uf.union(x, A.beta[(x, u[(a, b)])])
    rep = {x: uf.find(x) for x in A.elements}
    classes = tuple(dict.fromkeys(rep[x] for x in A.elements))
    logger.debug(f"descent: {len(A.elements)} elements collapse to {len(classes)} classes")

    chosen_over: Dict[Obj, Obj] = {}
    for h0 in H.objects:
        chosen_over.setdefault(Phi.obj(h0), h0)

    def lift(a: Obj, k: Arrow) -> Arrow:
        b = chosen_over[K.t[k]]
        for h in H.hom(a, b):
            if Phi(h) == k:
                return h
        raise DescentError(f"no lift of {k!r} from {a!r}")

    q = {c: Phi.obj(A.p[c]) for c in classes}
    beta = {}
    for c in classes:
        for k in K.arrows_from(q[c]):
            beta[(c, k)] = rep[A.beta[(c, lift(A.p[c], k))]]
    descended = SheafAction(K, classes, q, beta, f"descent({A.name})")

    witness = {x: (A.p[x], rep[x]) for x in A.elements}
    check = SheafMorphism(A, pullback_sheaf(Phi, descended), witness)
    bad = sheaf_morphism_violations(check)
    if bad:
        raise DescentError(f"descended bundle fails to pull back: {bad[0].equation}")
    return DescentResult(action_to_dofib(descended), descended, witness)

