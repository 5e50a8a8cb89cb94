"""
Forward-chaining derivability for coherent propositional sequents.

Facts start from the query's lhs; every relation whose lhs is contained in the
facts fires. Single-term conclusions are added, an empty conclusion (⊥)
closes the branch, and a disjunctive conclusion splits into one branch per
term. A query holds when every branch reaches a goal term or ⊥. Results are
memoised per fact set.
"""

import logging
from typing import Dict, List, Tuple

from utils.errors import SaturationLimitError

from .base import Presentation, Sequent
from .search import compiled

logger = logging.getLogger(__name__)

DEFAULT_CAP = 1_000_000


class SaturationProver:
    def __init__(self, pres: Presentation, cap: int = DEFAULT_CAP):
        self.pres = pres
        self.relations = compiled(pres).relations
        self.cap = cap
        self.derived = 0

    def derives(self, seq: Sequent) -> bool:
        self.pres.check_ids(seq.generators(), "query")
        goals = [self.pres.mask_of(term) for term in seq.rhs]
        memo: Dict[int, bool] = {}
        result = self._close(self.pres.mask_of(seq.lhs), goals, memo)
        logger.debug(f"saturation: {seq} -> {result} ({self.derived} derived facts)")
        return result

    def _close(self, facts: int, goals: List[int], memo: Dict[int, bool]) -> bool:
        if facts in memo:
            return memo[facts]
        start = facts
        facts, closed = self._chain(facts)
        if closed or any(not g & ~facts for g in goals):
            result = True
        else:
            split = self._pending_split(facts)
            if split is None:
                result = False
            else:
                result = all(self._close(facts | term, goals, memo) for term in split)
        memo[start] = memo[facts] = result
        return result

    def _chain(self, facts: int) -> Tuple[int, bool]:
        changed = True
        while changed:
            changed = False
            for lhs, rhs in self.relations:
                if lhs & ~facts:
                    continue
                if any(not t & ~facts for t in rhs):
                    continue
                if not rhs:
                    return facts, True
                if len(rhs) == 1:
                    new = rhs[0] & ~facts
                    facts |= new
                    self.derived += bin(new).count("1")
                    if self.derived > self.cap:
                        raise SaturationLimitError(self.cap)
                    changed = True
        return facts, False

    def _pending_split(self, facts: int):
        for lhs, rhs in self.relations:
            if lhs & ~facts:
                continue
            if any(not t & ~facts for t in rhs):
                continue
            return rhs
        return None


def derives(pres: Presentation, seq: Sequent, cap: int = DEFAULT_CAP) -> bool:
    """True iff `seq` is derivable from the relations of `pres` by saturation."""
    return SaturationProver(pres, cap).derives(seq)
