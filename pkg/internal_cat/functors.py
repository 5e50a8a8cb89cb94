"""
Internal functors, transformations and finite pullbacks of categories.
"""

import itertools
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Tuple

from utils.errors import AxiomViolation, CategoryAxiomError, FunctorError

from .category import Arrow, FiniteCategory, Obj


@dataclass(frozen=True)
class InternalFunctor:
    source: FiniteCategory
    target: FiniteCategory
    on_objects: Dict[Obj, Obj]
    on_arrows: Dict[Arrow, Arrow]
    name: str = field(default="", compare=False)

    def __call__(self, f: Arrow) -> Arrow:
        return self.on_arrows[f]

    def obj(self, x: Obj) -> Obj:
        return self.on_objects[x]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "objects": {repr(x): repr(y) for x, y in self.on_objects.items()},
            "arrows": {repr(f): repr(g) for f, g in self.on_arrows.items()},
        }


def functor_violations(F: InternalFunctor) -> List[AxiomViolation]:
    H, K = F.source, F.target
    bad: List[AxiomViolation] = []
    for x in H.objects:
        if F.on_objects.get(x) not in K.object_index:
            return [AxiomViolation("Φ₀ total", (x,))]
    for f in H.arrows:
        if F.on_arrows.get(f) not in K.arrow_index:
            return [AxiomViolation("Φ₁ total", (f,))]

    def first(equation: str, witnesses: Iterator[Tuple[Any, ...]]) -> None:
        for w in witnesses:
            bad.append(AxiomViolation(equation, w))
            return

    first("s∘Φ₁ = Φ₀∘s", ((f,) for f in H.arrows if K.s[F(f)] != F.obj(H.s[f])))
    first("t∘Φ₁ = Φ₀∘t", ((f,) for f in H.arrows if K.t[F(f)] != F.obj(H.t[f])))
    first("Φ₁∘e = e∘Φ₀", ((x,) for x in H.objects if F(H.e[x]) != K.e[F.obj(x)]))
    first(
        "Φ₁∘m = m∘(Φ₁ × Φ₁)",
        ((f, g) for (f, g), h in H.m.items() if K.m.get((F(f), F(g))) != F(h)),
    )
    return bad


def check_functor(F: InternalFunctor) -> InternalFunctor:
    violations = functor_violations(F)
    if violations:
        raise FunctorError(violations)
    return F


def identity_functor(C: FiniteCategory) -> InternalFunctor:
    return InternalFunctor(C, C, {x: x for x in C.objects}, {f: f for f in C.arrows}, "id")


def compose_functors(F: InternalFunctor, G: InternalFunctor) -> InternalFunctor:
    """F: A → B then G: B → C."""
    return InternalFunctor(
        F.source,
        G.target,
        {x: G.on_objects[y] for x, y in F.on_objects.items()},
        {f: G.on_arrows[g] for f, g in F.on_arrows.items()},
        f"{G.name}∘{F.name}",
    )


def is_fully_faithful(F: InternalFunctor) -> bool:
    """Φ₁ restricts to a bijection Hom(x, y) → Hom(Φ₀x, Φ₀y) for every pair."""
    H, K = F.source, F.target
    for x in H.objects:
        for y in H.objects:
            images = [F(f) for f in H.hom(x, y)]
            expected = K.hom(F.obj(x), F.obj(y))
            if len(images) != len(expected) or set(images) != set(expected):
                return False
    return True


def is_surjective_on_objects(F: InternalFunctor) -> bool:
    return set(F.on_objects.values()) >= set(F.target.objects)


def is_isomorphism(F: InternalFunctor) -> bool:
    return (
        len(set(F.on_objects.values())) == len(F.source.objects) == len(F.target.objects)
        and len(set(F.on_arrows.values())) == len(F.source.arrows) == len(F.target.arrows)
    )


def enumerate_functors(H: FiniteCategory, K: FiniteCategory) -> List[InternalFunctor]:
    """Every functor H → K, by backtracking over object maps then hom-set choices."""
    result: List[InternalFunctor] = []
    free_arrows = [f for f in H.arrows if not H.is_identity(f)]
    for images in itertools.product(K.objects, repeat=len(H.objects)):
        on_objects = dict(zip(H.objects, images))
        candidates = [K.hom(on_objects[H.s[f]], on_objects[H.t[f]]) for f in free_arrows]
        if any(not c for c in candidates):
            continue
        base = {H.e[x]: K.e[on_objects[x]] for x in H.objects}
        for choice in itertools.product(*candidates):
            on_arrows = dict(base)
            on_arrows.update(zip(free_arrows, choice))
            F = InternalFunctor(H, K, on_objects, on_arrows)
            if all(K.m.get((on_arrows[f], on_arrows[g])) == on_arrows[h] for (f, g), h in H.m.items()):
                result.append(F)
    return result


# --- transformations -------------------------------------------------------


@dataclass(frozen=True)
class InternalTransformation:
    """a: H₀ → K₁ with s∘a = Φ₀, t∘a = Ψ₀ and the naturality square."""

    source: InternalFunctor
    target: InternalFunctor
    components: Dict[Obj, Arrow]

    def __call__(self, x: Obj) -> Arrow:
        return self.components[x]

    def to_dict(self) -> Dict[str, Any]:
        return {repr(x): repr(f) for x, f in self.components.items()}


def transformation_violations(a: InternalTransformation) -> List[AxiomViolation]:
    Phi, Psi = a.source, a.target
    H, K = Phi.source, Phi.target
    for x in H.objects:
        f = a.components.get(x)
        if f not in K.arrow_index:
            return [AxiomViolation("a total", (x,))]
        if K.s[f] != Phi.obj(x):
            return [AxiomViolation("s∘a = Φ₀", (x,))]
        if K.t[f] != Psi.obj(x):
            return [AxiomViolation("t∘a = Ψ₀", (x,))]
    for h in H.arrows:
        lhs = K.m[(a(H.s[h]), Psi(h))]
        rhs = K.m[(Phi(h), a(H.t[h]))]
        if lhs != rhs:
            return [AxiomViolation("m∘(a∘s, Ψ₁) = m∘(Φ₁, a∘t)", (h,))]
    return []


def check_transformation(a: InternalTransformation) -> InternalTransformation:
    violations = transformation_violations(a)
    if violations:
        raise CategoryAxiomError(violations, what="transformation")
    return a


def identity_transformation(F: InternalFunctor) -> InternalTransformation:
    return InternalTransformation(F, F, {x: F.target.e[F.obj(x)] for x in F.source.objects})


def enumerate_transformations(Phi: InternalFunctor, Psi: InternalFunctor) -> List[InternalTransformation]:
    H, K = Phi.source, Phi.target
    choices = [K.hom(Phi.obj(x), Psi.obj(x)) for x in H.objects]
    result = []
    for picked in itertools.product(*choices):
        a = InternalTransformation(Phi, Psi, dict(zip(H.objects, picked)))
        if not transformation_violations(a):
            result.append(a)
    return result


# --- pullbacks ---------------------------------------------------------------


def pullback_categories(
    F: InternalFunctor, G: InternalFunctor, name: str = ""
) -> Tuple[FiniteCategory, InternalFunctor, InternalFunctor]:
    """A ×_C B for F: A → C and G: B → C, as tuple sets with componentwise structure."""
    A, B = F.source, G.source
    objects = tuple((a, b) for a in A.objects for b in B.objects if F.obj(a) == G.obj(b))
    arrows = tuple((f, g) for f in A.arrows for g in B.arrows if F(f) == G(g))
    s = {(f, g): (A.s[f], B.s[g]) for f, g in arrows}
    t = {(f, g): (A.t[f], B.t[g]) for f, g in arrows}
    e = {(a, b): (A.e[a], B.e[b]) for a, b in objects}
    m = {}
    by_source: Dict[Tuple[Obj, Obj], List[Tuple[Arrow, Arrow]]] = {}
    for fg in arrows:
        by_source.setdefault(s[fg], []).append(fg)
    for f1, g1 in arrows:
        for f2, g2 in by_source.get(t[(f1, g1)], []):
            m[((f1, g1), (f2, g2))] = (A.m[(f1, f2)], B.m[(g1, g2)])
    i = None
    if A.i is not None and B.i is not None:
        i = {(f, g): (A.i[f], B.i[g]) for f, g in arrows}
    P = FiniteCategory(objects, arrows, s, t, e, m, i, name or "pullback")
    pi1 = InternalFunctor(P, A, {x: x[0] for x in objects}, {f: f[0] for f in arrows}, "π₁")
    pi2 = InternalFunctor(P, B, {x: x[1] for x in objects}, {f: f[1] for f in arrows}, "π₂")
    return P, pi1, pi2


def induced_category(
    K: FiniteCategory, objects: List[Obj], over: Dict[Obj, Obj], name: str = ""
) -> Tuple[FiniteCategory, InternalFunctor]:
    """
    The category with the given objects and arrows (a, k, b) for k: q(a) → q(b):
    the pullback of K₁ along q × q. Its projection to K is fully faithful.
    """
    objects = tuple(objects)
    by_pair = {}
    arrows = []
    for a in objects:
        for b in objects:
            for k in K.hom(over[a], over[b]):
                f = (a, k, b)
                arrows.append(f)
                by_pair.setdefault(a, []).append(f)
    s = {f: f[0] for f in arrows}
    t = {f: f[2] for f in arrows}
    e = {a: (a, K.e[over[a]], a) for a in objects}
    m = {}
    for f in arrows:
        for g in by_pair.get(f[2], []):
            m[(f, g)] = (f[0], K.m[(f[1], g[1])], g[2])
    i = {f: (f[2], K.i[f[1]], f[0]) for f in arrows} if K.i is not None else None
    C = FiniteCategory(objects, tuple(arrows), s, t, e, m, i, name or "induced")
    proj = InternalFunctor(C, K, dict(over), {f: f[1] for f in arrows}, "Ξ")
    return C, proj
