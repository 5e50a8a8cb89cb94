"""
Canonical JSON for presentations and frame homs.

Meet terms are written as id lists in generator declaration order; DNF terms
are sorted by their declaration-index lists. Encoding uses sorted keys and
compact separators so equal presentations give identical bytes.
"""

import json
from typing import Any, Dict, List

from utils.errors import BundleFormatError, PresentationError

from .base import DNF, Generator, MeetTerm, Presentation, PresentationOrientation, Sequent, normalize
from .homs import FrameHomSpec, make_hom


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _jsonable(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    return value


def _tuplify(value: Any) -> Any:
    if isinstance(value, list):
        return tuple(_tuplify(v) for v in value)
    return value


def _term_ids(pres: Presentation, term: MeetTerm) -> List[str]:
    return sorted(term, key=pres.index.__getitem__)


def _dnf_ids(pres: Presentation, dnf: DNF) -> List[List[str]]:
    terms = [_term_ids(pres, t) for t in dnf]
    return sorted(terms, key=lambda ids: [pres.index[g] for g in ids])


def presentation_to_dict(pres: Presentation) -> Dict[str, Any]:
    return {
        "generators": [
            {"id": g.id, "display": g.display, "tags": {k: _jsonable(v) for k, v in g.tags}}
            for g in pres.generators
        ],
        "relations": [{"lhs": _term_ids(pres, r.lhs), "rhs": _dnf_ids(pres, r.rhs)} for r in pres.relations],
        "orientation": pres.orientation.value,
    }


def presentation_from_dict(data: Dict[str, Any], name: str = "") -> Presentation:
    try:
        generators = tuple(
            Generator(g["id"], g.get("display", g["id"]), tuple(sorted((k, _tuplify(v)) for k, v in g.get("tags", {}).items())))
            for g in data["generators"]
        )
        relations = tuple(
            Sequent(frozenset(r["lhs"]), normalize(frozenset(t) for t in r["rhs"])) for r in data["relations"]
        )
        orientation = PresentationOrientation(data.get("orientation", "open"))
    except (KeyError, TypeError, ValueError) as e:
        raise BundleFormatError(f"malformed presentation JSON: {e}") from e
    try:
        return Presentation(generators, relations, orientation, name)
    except PresentationError as e:
        raise BundleFormatError(f"invalid presentation {name or '?'}: {e}") from e


def to_canonical_json(pres: Presentation) -> str:
    return canonical_dumps(presentation_to_dict(pres))


def from_json(text: str, name: str = "") -> Presentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise BundleFormatError(f"not JSON: {e}") from e
    return presentation_from_dict(data, name)


def hom_to_dict(hom: FrameHomSpec, source_ref: str, target_ref: str) -> Dict[str, Any]:
    return {
        "name": hom.name,
        "source": source_ref,
        "target": target_ref,
        "map": {g: _dnf_ids(hom.target, hom.mapping[g]) for g in hom.source.ids},
        "verified": hom.verified,
    }


def hom_from_dict(data: Dict[str, Any], source: Presentation, target: Presentation) -> FrameHomSpec:
    """Rebuild an unverified spec; callers re-run check_frame_hom."""
    try:
        mapping = {g: normalize(frozenset(t) for t in terms) for g, terms in data["map"].items()}
        return make_hom(source, target, mapping, data.get("name", ""))
    except (KeyError, TypeError, AttributeError) as e:
        raise BundleFormatError(f"malformed hom JSON: {e}") from e
    except PresentationError as e:
        raise BundleFormatError(f"hom {data.get('name', '?')} does not match its presentations: {e}") from e
