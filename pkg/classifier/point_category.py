"""
The finite category of points of a classifier: models as objects,
homomorphisms (or isomorphisms) as arrows, structure from pushforwards.
"""

import logging
from typing import Dict, List, Tuple

from internal_cat import FiniteCategory
from presentations import Point, enumerate_points, point_pushforward
from utils.errors import ClassifierError

from .arrows import ArrowLayer
from .build import ClassifierBundle
from .params import at, strip_copy

logger = logging.getLogger(__name__)

MAP_PREFIXES = ("alpha:", "beta:", "gamma:")


def _split(pt: Point) -> Tuple[List[str], List[str]]:
    """Object-layer ids (with copy suffix) and map ids of an arrow-layer point."""
    layered = [g for g in pt.trueset if "@" in g]
    maps = [g for g in pt.trueset if g.startswith(MAP_PREFIXES)]
    return layered, maps


def pair_point(layer: ArrowLayer, f: Point, g: Point) -> Point:
    """
    The point of the composable-pairs presentation made of f (copies 1, 2;
    α as β) and g (its copy 2 as copy 3; α as γ).
    """
    f_layered, f_maps = _split(f)
    g_layered, g_maps = _split(g)
    trueset = set(f_layered)
    for gid in g_layered:
        base, copy = strip_copy(gid)
        if copy == 2:
            trueset.add(at(base, 3))
    trueset.update("beta" + gid[len("alpha"):] for gid in f_maps)
    trueset.update("gamma" + gid[len("alpha"):] for gid in g_maps)
    trueset = frozenset(trueset)
    violated = layer.pairs.first_violation(trueset)
    if violated is not None:
        raise ClassifierError(f"arrows are not composable: relation {violated} fails on their pairing")
    return layer.pairs.point(trueset)


def point_category(bundle: ClassifierBundle, core: bool = False) -> FiniteCategory:
    """
    Objects are the g0 points, arrows the g1 (or core) points; s, t, e, m and
    i are pushforwards of the structure maps.
    """
    layer = bundle.layer(core)
    objects = tuple(enumerate_points(bundle.g0))
    arrows = tuple(enumerate_points(layer.arrows))
    s = {f: point_pushforward(layer.s, f) for f in arrows}
    t = {f: point_pushforward(layer.t, f) for f in arrows}
    e = {x: point_pushforward(layer.e, x) for x in objects}
    outgoing: Dict[Point, List[Point]] = {}
    for g in arrows:
        outgoing.setdefault(s[g], []).append(g)
    m = {}
    for f in arrows:
        for g in outgoing.get(t[f], []):
            m[(f, g)] = point_pushforward(layer.m, pair_point(layer, f, g))
    i = {f: point_pushforward(layer.i, f) for f in arrows} if layer.i is not None else None
    name = "points(core)" if core else "points"
    logger.info(f"{name}: {len(objects)} objects, {len(arrows)} arrows, {len(m)} composable pairs")
    return FiniteCategory(objects, arrows, s, t, e, m, i, name)
