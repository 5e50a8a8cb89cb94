"""
Point search over a presentation: backtracking with unit propagation.

Generators are bits of a Python int. A relation is compiled to
(lhs_mask, [term_masks]); propagation forces the only live rhs term once the
lhs is true, and falsifies the last open lhs bit once every rhs term is dead.
Each relation is watched by the bits it mentions.
"""

import logging
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .base import Point, Presentation, Sequent

logger = logging.getLogger(__name__)

CompiledRelation = Tuple[int, Tuple[int, ...]]


class CompiledPresentation:
    def __init__(self, pres: Presentation):
        self.size = len(pres.generators)
        self.relations: List[CompiledRelation] = [self.compile(pres, rel) for rel in pres.relations]
        self.watch: List[List[int]] = [[] for _ in range(self.size)]
        for r, (lhs, rhs) in enumerate(self.relations):
            mentioned = lhs
            for term in rhs:
                mentioned |= term
            bit = 0
            while mentioned:
                if mentioned & 1:
                    self.watch[bit].append(r)
                mentioned >>= 1
                bit += 1

    @staticmethod
    def compile(pres: Presentation, rel: Sequent) -> CompiledRelation:
        return pres.mask_of(rel.lhs), tuple(pres.mask_of(term) for term in rel.rhs)


class PointSearch:
    """One search problem: a compiled presentation plus optional extra constraints."""

    def __init__(self, compiled: CompiledPresentation, extra: Sequence[CompiledRelation] = ()):
        self.compiled = compiled
        self.size = compiled.size
        self.full = (1 << self.size) - 1
        self.relations = list(compiled.relations) + list(extra)
        base = len(compiled.relations)
        if extra:
            self.watch = [list(w) for w in compiled.watch]
            for k, (lhs, rhs) in enumerate(extra):
                mentioned = lhs
                for term in rhs:
                    mentioned |= term
                for bit in range(self.size):
                    if mentioned >> bit & 1:
                        self.watch[bit].append(base + k)
        else:
            self.watch = compiled.watch

    def _propagate(self, true_m: int, false_m: int, pending: Iterable[int]) -> Optional[Tuple[int, int]]:
        relations = self.relations
        watch = self.watch
        queue = list(pending)
        queued = set(queue)
        while queue:
            r = queue.pop()
            queued.discard(r)
            lhs, rhs = relations[r]
            if lhs & false_m:
                continue
            live = [t for t in rhs if not t & false_m]
            if any(not t & ~true_m for t in live):
                continue
            open_lhs = lhs & ~true_m
            if not open_lhs:
                if not live:
                    return None
                if len(live) == 1:
                    new = live[0] & ~true_m
                    true_m |= new
                    self._enqueue(new, watch, queue, queued)
            elif not live and open_lhs & (open_lhs - 1) == 0:
                false_m |= open_lhs
                self._enqueue(open_lhs, watch, queue, queued)
        return true_m, false_m

    @staticmethod
    def _enqueue(bits: int, watch: List[List[int]], queue: List[int], queued: set) -> None:
        bit = 0
        while bits:
            if bits & 1:
                for r in watch[bit]:
                    if r not in queued:
                        queued.add(r)
                        queue.append(r)
            bits >>= 1
            bit += 1

    def solutions(self, assume_true: int = 0, assume_false: int = 0) -> Iterator[int]:
        """Yield every satisfying mask extending the assumptions (unordered)."""
        if assume_true & assume_false:
            return
        start = self._propagate(assume_true, assume_false, range(len(self.relations)))
        if start is None:
            return
        stack = [start]
        while stack:
            true_m, false_m = stack.pop()
            open_bits = self.full & ~(true_m | false_m)
            if not open_bits:
                yield true_m
                continue
            bit = open_bits & -open_bits
            for branch in ((true_m | bit, false_m), (true_m, false_m | bit)):
                state = self._propagate(branch[0], branch[1], self._watchers(bit))
                if state is not None:
                    stack.append(state)

    def _watchers(self, bit: int) -> List[int]:
        return self.watch[bit.bit_length() - 1]

    def first(self, assume_true: int = 0, assume_false: int = 0) -> Optional[int]:
        for mask in self.solutions(assume_true, assume_false):
            return mask
        return None


def compiled(pres: Presentation) -> CompiledPresentation:
    """Compiled form, cached on the presentation object."""
    cached = pres.__dict__.get("_compiled")
    if cached is None:
        cached = CompiledPresentation(pres)
        pres.__dict__["_compiled"] = cached
        logger.debug(f"compiled presentation {pres.name or '?'}: {len(pres)} generators, {len(pres.relations)} relations")
    return cached


def enumerate_points(pres: Presentation) -> List[Point]:
    """All points, ordered by generator bitmask."""
    masks = sorted(PointSearch(compiled(pres)).solutions())
    return [Point(pres.ids_of(mask), mask) for mask in masks]


def count_points(pres: Presentation) -> int:
    return sum(1 for _ in PointSearch(compiled(pres)).solutions())


def find_point(
    pres: Presentation,
    assume_true: Iterable[str] = (),
    assume_false: Iterable[str] = (),
    forbid: Iterable[Iterable[str]] = (),
) -> Optional[Point]:
    """
    Some point containing `assume_true`, avoiding `assume_false`, and including
    none of the `forbid` meets entirely; None if there is none.
    """
    extra = [(pres.mask_of(term), ()) for term in forbid]
    search = PointSearch(compiled(pres), extra)
    mask = search.first(pres.mask_of(assume_true), pres.mask_of(assume_false))
    if mask is None:
        return None
    return Point(pres.ids_of(mask), mask)


def points_matrix(pres: Presentation, points: Optional[Sequence[Point]] = None) -> np.ndarray:
    """Boolean matrix: one row per point (canonical order), one column per generator."""
    if points is None:
        points = enumerate_points(pres)
    matrix = np.zeros((len(points), len(pres.generators)), dtype=bool)
    for row, pt in enumerate(points):
        for col in range(len(pres.generators)):
            matrix[row, col] = bool(pt.mask >> col & 1)
    return matrix
