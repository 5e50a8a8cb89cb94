"""
Seeded random instances for the property suites: preorders, fattenings along
fully faithful surjections, actions and functors.
"""

from typing import List, Optional, Tuple

import numpy as np

from .anafunctors import Anafunctor, TwoCellDatum, two_cell_functors, two_cell_source
from .category import FiniteCategory, preorder_category
from .functors import (
    InternalFunctor,
    compose_functors,
    enumerate_functors,
    enumerate_transformations,
    induced_category,
)
from .sheaves import SheafAction


def random_preorder(rng: np.random.Generator, n_objects: int, density: float = 0.35, name: str = "") -> FiniteCategory:
    objects = tuple(f"o{k}" for k in range(n_objects))
    leq = [(a, b) for a in objects for b in objects if a != b and rng.random() < density]
    return preorder_category(objects, leq, name or f"preorder{n_objects}")


def random_topped_preorder(rng: np.random.Generator, n_objects: int, density: float = 0.35) -> FiniteCategory:
    """A random preorder whose last object lies above every other."""
    objects = tuple(f"o{k}" for k in range(n_objects))
    top = objects[-1]
    leq = [(a, b) for a in objects for b in objects if a != b and rng.random() < density]
    leq += [(a, top) for a in objects[:-1]]
    return preorder_category(objects, leq, f"topped{n_objects}")


def random_fattening(
    rng: np.random.Generator, K: FiniteCategory, max_copies: int = 2, name: str = ""
) -> Tuple[FiniteCategory, InternalFunctor]:
    """
    Replace each object k of K by 1..max_copies copies (k, j) and keep every
    arrow between copies; the projection is fully faithful and surjective.
    """
    objects = []
    over = {}
    for k in K.objects:
        for j in range(int(rng.integers(1, max_copies + 1))):
            objects.append((k, j))
            over[(k, j)] = k
    return induced_category(K, objects, over, name or f"fat({K.name})")


def random_action(rng: np.random.Generator, H: FiniteCategory, max_pieces: int = 2) -> SheafAction:
    """
    A coproduct of representables Hom(x, -) and copies of the terminal
    sheaf, chosen at random.
    """
    elements = []
    p = {}
    beta = {}
    n_representables = int(rng.integers(0, max_pieces + 1))
    for i in range(n_representables):
        x = H.objects[int(rng.integers(len(H.objects)))]
        for f in H.arrows_from(x):
            el = ("r", i, f)
            elements.append(el)
            p[el] = H.t[f]
        for f in H.arrows_from(x):
            for g in H.arrows_from(H.t[f]):
                beta[(("r", i, f), g)] = ("r", i, H.m[(f, g)])
    n_terminal = int(rng.integers(0 if n_representables else 1, max_pieces + 1))
    for j in range(n_terminal):
        for y in H.objects:
            el = ("1", j, y)
            elements.append(el)
            p[el] = y
        for g in H.arrows:
            beta[(("1", j, H.s[g]), g)] = ("1", j, H.t[g])
    return SheafAction(H, tuple(elements), p, beta, "random")


def random_functor(rng: np.random.Generator, H: FiniteCategory, K: FiniteCategory) -> InternalFunctor:
    """Uniform over all functors H → K; K must be nonempty."""
    functors = enumerate_functors(H, K)
    return functors[int(rng.integers(len(functors)))]


def random_anafunctor(
    rng: np.random.Generator, H: FiniteCategory, K: FiniteCategory, max_copies: int = 2
) -> Anafunctor:
    middle, xi = random_fattening(rng, H, max_copies)
    return Anafunctor(xi, random_functor(rng, middle, K))


def random_two_cell_datum(
    rng: np.random.Generator, n_objects: int = 2, max_copies: int = 2
) -> Optional[TwoCellDatum]:
    """
    A raw 2-cell between random anafunctors into a topped preorder, with Σ a
    random fattening of the pullback of the left legs. None when no
    transformation exists between the two composites.
    """
    H = random_preorder(rng, n_objects)
    K = random_topped_preorder(rng, n_objects)
    F1 = random_anafunctor(rng, H, K, max_copies)
    F2 = random_anafunctor(rng, H, K, max_copies)
    P, _, _ = two_cell_source(F1, F2)
    middle, sigma = random_fattening(rng, P, max_copies, "K3")
    Phi, Psi = two_cell_functors(F1, F2)
    candidates: List = enumerate_transformations(compose_functors(sigma, Phi), compose_functors(sigma, Psi))
    if not candidates:
        return None
    tau = candidates[int(rng.integers(len(candidates)))]
    return TwoCellDatum(F1, F2, sigma, tau)
