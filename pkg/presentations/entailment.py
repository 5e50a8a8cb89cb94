"""
Entailment of sequents in a presented frame.

The default decides by points: a sequent holds iff no point makes its lhs true
while refuting every rhs term. The saturation prover is the syntactic
alternative; both agree on this fragment.
"""

from typing import Optional

from config import get_config

from .base import Point, Presentation, Sequent
from .saturation import derives
from .search import find_point

POINTS = "points"
SATURATION = "saturation"


def countermodel(pres: Presentation, seq: Sequent) -> Optional[Point]:
    """A point refuting `seq`, or None when the sequent holds."""
    pres.check_ids(seq.generators(), "entailment query")
    return find_point(pres, assume_true=seq.lhs, forbid=seq.rhs)


def entails(pres: Presentation, seq: Sequent, method: Optional[str] = None) -> bool:
    method = method or get_config().get("presentations.entailment", POINTS)
    if method == SATURATION:
        pres.check_ids(seq.generators(), "entailment query")
        return derives(pres, seq, get_config().get("presentations.saturation_cap", 1_000_000))
    if method != POINTS:
        raise ValueError(f"unknown entailment method '{method}'; use '{POINTS}' or '{SATURATION}'")
    return countermodel(pres, seq) is None
