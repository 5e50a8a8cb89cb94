"""
The core groupoid of a finite category.
"""

from typing import Dict, Tuple

from utils.errors import FunctorError, AxiomViolation

from .category import Arrow, FiniteCategory
from .functors import InternalFunctor


def core(C: FiniteCategory) -> FiniteCategory:
    """
    Arrows are the pairs (f, g) with f: x → y, g: y → x, m(f, g) = e(x) and
    m(g, f) = e(y). The inverse swaps the pair.
    """
    pairs = []
    for f in C.arrows:
        x, y = C.s[f], C.t[f]
        for g in C.hom(y, x):
            if C.m[(f, g)] == C.e[x] and C.m[(g, f)] == C.e[y]:
                pairs.append((f, g))
    arrows = tuple(pairs)
    known = set(arrows)
    s = {fg: C.s[fg[0]] for fg in arrows}
    t = {fg: C.t[fg[0]] for fg in arrows}
    e = {x: (C.e[x], C.e[x]) for x in C.objects}
    m: Dict[Tuple[Arrow, Arrow], Arrow] = {}
    for f, g in arrows:
        for f2, g2 in arrows:
            if C.t[f] == C.s[f2]:
                h = (C.m[(f, f2)], C.m[(g2, g)])
                if h in known:
                    m[((f, g), (f2, g2))] = h
    i = {(f, g): (g, f) for f, g in arrows}
    return FiniteCategory(C.objects, arrows, s, t, e, m, i, f"core({C.name})" if C.name else "core")


def core_inclusion(C: FiniteCategory, K: FiniteCategory) -> InternalFunctor:
    """The faithful functor core(C) → C forgetting the inverse."""
    return InternalFunctor(K, C, {x: x for x in K.objects}, {fg: fg[0] for fg in K.arrows}, "core_inclusion")


def factor_through_core(J: InternalFunctor, K: FiniteCategory) -> InternalFunctor:
    """
    For a functor J: G → C out of a groupoid, the unique J' : G → core(C)
    with core_inclusion ∘ J' = J, sending h to (J h, J(i h)).
    """
    G = J.source
    if G.i is None:
        raise FunctorError([AxiomViolation("source is a groupoid", (G.name,))])
    on_arrows = {h: (J(h), J(G.i[h])) for h in G.arrows}
    known = set(K.arrows)
    for h, pair in on_arrows.items():
        if pair not in known:
            raise FunctorError([AxiomViolation("J(h) invertible", (h,))])
    return InternalFunctor(G, K, dict(J.on_objects), on_arrows, "factor_through_core")
