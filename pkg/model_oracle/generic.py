"""
The generic model E as a model over the category of points of the
classifier: the fiber of E_A over a model point is that model's A-carrier,
arrows act through θ, and relations come from the relation sublocales.
"""

import logging
from typing import Dict, FrozenSet, Optional, Set

from classifier import ClassifierBundle, point_category
from classifier.params import equiv_id
from internal_cat import FiniteCategory, SheafAction
from presentations import Point, enumerate_points, point_pushforward

from .bijections import action_point
from .bundle_models import BundleModel, Row

logger = logging.getLogger(__name__)


def _carrier(bundle: ClassifierBundle, C: FiniteCategory, sort: str) -> SheafAction:
    sb = bundle.sort_bundle(sort)
    elements = tuple(enumerate_points(sb.total))
    p = {y: point_pushforward(sb.rho, y) for y in elements}
    beta = {}
    for y in elements:
        for g in C.arrows_from(p[y]):
            beta[(y, g)] = point_pushforward(sb.theta, action_point(bundle, sort, g, y))
    return SheafAction(C, elements, p, beta, f"E_{sort}")


def _relation_rows(bundle: ClassifierBundle, sorts: Dict[str, SheafAction], relation: str) -> FrozenSet[Row]:
    arity = bundle.theory.arity(relation)
    by_trueset: Dict[str, Dict[FrozenSet[str], Point]] = {
        sort: {y.trueset: y for y in sorts[sort].elements} for sort in set(arity)
    }
    rows: Set[Row] = set()
    for pt in enumerate_points(bundle.relation_sublocale(relation)):
        base = frozenset(g for g in pt.trueset if not g.startswith("equiv:"))
        if not arity:
            rows.add((bundle.g0.point(base),))
            continue
        row = []
        for i, sort in enumerate(arity, 1):
            picked = {equiv_id(sort, 1, p) for p in bundle.params.tokens if equiv_id(sort, i, p) in pt.trueset}
            row.append(by_trueset[sort][base | picked])
        rows.add(tuple(row))
    return frozenset(rows)


def generic_bundle_model(
    bundle: ClassifierBundle, core: bool = False, category: Optional[FiniteCategory] = None
) -> BundleModel:
    """E over point_category(bundle, core); pass `category` to reuse one already built."""
    C = category if category is not None else point_category(bundle, core)
    sorts = {sort: _carrier(bundle, C, sort) for sort in bundle.theory.sorts}
    relations = {rel.name: _relation_rows(bundle, sorts, rel.name) for rel in bundle.theory.relations}
    logger.info(
        f"generic model over {C.name}: "
        + ", ".join(f"{sort} has {len(a.elements)} elements" for sort, a in sorts.items())
    )
    return BundleModel(bundle.theory, C, sorts, relations, "E")
