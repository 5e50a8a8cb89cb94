"""
Product check: the classifier of a disjoint union of theories has, layer by
layer, exactly the pairs of points of the two classifiers.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Dict, FrozenSet, Optional, Tuple

from presentations import Presentation, enumerate_points
from theory_dsl import Theory, disjoint_union

from .build import build_classifier
from .params import ParameterSet

logger = logging.getLogger(__name__)


def untag(generator_id: str, tag: str) -> Optional[str]:
    """The component id of a generator of the union, or None if it belongs to the other side."""
    kind, _, rest = generator_id.partition(":")
    name, sep, tail = rest.partition(":")
    prefix = f"{tag}_"
    if not name.startswith(prefix):
        return None
    return f"{kind}:{name[len(prefix):]}{sep}{tail}"


def split_point(trueset: FrozenSet[str], tags: Tuple[str, str]) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    left = frozenset(filter(None, (untag(g, tags[0]) for g in trueset)))
    right = frozenset(filter(None, (untag(g, tags[1]) for g in trueset)))
    return left, right


@dataclass(frozen=True)
class LayerProduct:
    layer: str
    union_points: int
    left_points: int
    right_points: int
    bijective: bool

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def _compare(layer: str, union: Presentation, left: Presentation, right: Presentation, tags) -> LayerProduct:
    union_points = enumerate_points(union)
    left_points = {pt.trueset for pt in enumerate_points(left)}
    right_points = {pt.trueset for pt in enumerate_points(right)}
    images = set()
    ok = True
    for pt in union_points:
        pair = split_point(pt.trueset, tags)
        if pair[0] not in left_points or pair[1] not in right_points:
            logger.debug(f"{layer}: union point splits outside the factors")
            ok = False
        images.add(pair)
    ok = ok and len(images) == len(union_points) == len(left_points) * len(right_points)
    return LayerProduct(layer, len(union_points), len(left_points), len(right_points), ok)


def classifier_product_check(
    left: Theory, right: Theory, params: ParameterSet, tags: Tuple[str, str] = ("L", "R")
) -> Dict[str, LayerProduct]:
    union = build_classifier(disjoint_union(left, right, tags), params)
    lb = build_classifier(left, params)
    rb = build_classifier(right, params)
    return {
        "objects": _compare("objects", union.g0, lb.g0, rb.g0, tags),
        "arrows": _compare("arrows", union.g1, lb.g1, rb.g1, tags),
    }
