"""
Anafunctors (spans whose left leg is fully faithful and surjective on
objects), their composition, and 2-cells in canonical form.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

from utils.errors import CategoryError, TwoCellError

from .category import FiniteCategory, Obj
from .functors import (
    InternalFunctor,
    InternalTransformation,
    compose_functors,
    functor_violations,
    identity_functor,
    is_fully_faithful,
    is_surjective_on_objects,
    pullback_categories,
    transformation_violations,
)


@dataclass(frozen=True)
class Anafunctor:
    """H ⇸ K presented as H ←Ξ− K̃ −Φ→ K."""

    left: InternalFunctor
    right: InternalFunctor

    def __post_init__(self):
        if self.left.source != self.right.source:
            raise CategoryError("anafunctor legs have different sources")
        if functor_violations(self.left) or functor_violations(self.right):
            raise CategoryError("anafunctor legs must be functors")
        if not is_fully_faithful(self.left):
            raise CategoryError("left leg is not fully faithful")
        if not is_surjective_on_objects(self.left):
            raise CategoryError("left leg is not surjective on objects")

    @property
    def middle(self) -> FiniteCategory:
        return self.left.source

    @property
    def domain(self) -> FiniteCategory:
        return self.left.target

    @property
    def codomain(self) -> FiniteCategory:
        return self.right.target


def identity_anafunctor(C: FiniteCategory) -> Anafunctor:
    return Anafunctor(identity_functor(C), identity_functor(C))


def functor_as_anafunctor(F: InternalFunctor) -> Anafunctor:
    return Anafunctor(identity_functor(F.source), F)


def compose_anafunctors(F: Anafunctor, G: Anafunctor) -> Anafunctor:
    """F: H ⇸ K then G: K ⇸ L, through the pullback K̃₁ ×_K K̃₂."""
    if F.codomain != G.domain:
        raise CategoryError("anafunctors are not composable")
    P, pi1, pi2 = pullback_categories(F.right, G.left, "composite")
    return Anafunctor(compose_functors(pi1, F.left), compose_functors(pi2, G.right))


def two_cell_source(
    F1: Anafunctor, F2: Anafunctor
) -> Tuple[FiniteCategory, InternalFunctor, InternalFunctor]:
    """K̃₁ ×_H K̃₂ with its projections, the domain of a canonical 2-cell."""
    if F1.domain != F2.domain or F1.codomain != F2.codomain:
        raise TwoCellError("anafunctors are not parallel")
    return pullback_categories(F1.left, F2.left, "two_cell_source")


def two_cell_functors(F1: Anafunctor, F2: Anafunctor) -> Tuple[InternalFunctor, InternalFunctor]:
    """Φ₁∘π₁ and Φ₂∘π₂ on K̃₁ ×_H K̃₂."""
    _, pi1, pi2 = two_cell_source(F1, F2)
    return compose_functors(pi1, F1.right), compose_functors(pi2, F2.right)


@dataclass(frozen=True)
class TwoCellDatum:
    """
    A raw 2-cell F1 ⇒ F2: Σ: K̃₃ → K̃₁ ×_H K̃₂ fully faithful and surjective on
    objects, with τ: Φ₁∘π₁∘Σ ⇒ Φ₂∘π₂∘Σ.
    """

    first: Anafunctor
    second: Anafunctor
    sigma: InternalFunctor
    tau: InternalTransformation


def two_cell_canonical(datum: TwoCellDatum) -> InternalTransformation:
    """The unique τ̄ on K̃₁ ×_H K̃₂ with τ̄∘Σ₀ = τ."""
    sigma, tau = datum.sigma, datum.tau
    if not is_surjective_on_objects(sigma):
        missing = [x for x in sigma.target.objects if x not in set(sigma.on_objects.values())]
        raise TwoCellError("Σ₀ is not surjective", (missing[0],))
    if not is_fully_faithful(sigma):
        raise TwoCellError("Σ is not fully faithful")

    components: Dict[Obj, object] = {}
    first_seen: Dict[Obj, Obj] = {}
    for y in sigma.source.objects:
        x = sigma.obj(y)
        if x in components and components[x] != tau(y):
            raise TwoCellError("τ does not equalise the kernel pair of Σ₀", (first_seen[x], y))
        components.setdefault(x, tau(y))
        first_seen.setdefault(x, y)

    Phi, Psi = two_cell_functors(datum.first, datum.second)
    result = InternalTransformation(Phi, Psi, {x: components[x] for x in Phi.source.objects})
    bad = transformation_violations(result)
    if bad:
        raise TwoCellError(f"factored map is not natural: {bad[0].equation}", bad[0].witness)
    return result
