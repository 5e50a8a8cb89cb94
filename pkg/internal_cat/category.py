"""
Internal categories in finite sets.

Tables are plain dicts keyed by object/arrow labels; axiom checking indexes
them into numpy arrays and tests each equation in one vectorised pass.
Composition is diagrammatic: m(f, g) means "f then g", defined iff t(f) = s(g).
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from utils.errors import AxiomViolation, CategoryAxiomError

logger = logging.getLogger(__name__)

Obj = Hashable
Arrow = Hashable

S_E = "s∘e = id"
T_E = "t∘e = id"
M_DOMAIN = "dom(m) = H₁ ×_{H₀} H₁"
S_M = "s∘m = s∘π₁"
T_M = "t∘m = t∘π₂"
ASSOC = "m∘(m × id) = m∘(id × m)"
LEFT_UNIT = "m∘(e∘s, id) = id"
RIGHT_UNIT = "m∘(id, e∘t) = id"
S_I = "s∘i = t"
T_I = "t∘i = s"
RIGHT_INVERSE = "m∘(id, i) = e∘s"
LEFT_INVERSE = "m∘(i, id) = e∘t"
TABLES = "tables total"

CATEGORY_EQUATIONS = (S_E, T_E, M_DOMAIN, S_M, T_M, ASSOC, LEFT_UNIT, RIGHT_UNIT)
GROUPOID_EQUATIONS = (S_I, T_I, RIGHT_INVERSE, LEFT_INVERSE)


@dataclass(frozen=True)
class FiniteCategory:
    objects: Tuple[Obj, ...]
    arrows: Tuple[Arrow, ...]
    s: Dict[Arrow, Obj]
    t: Dict[Arrow, Obj]
    e: Dict[Obj, Arrow]
    m: Dict[Tuple[Arrow, Arrow], Arrow]
    i: Optional[Dict[Arrow, Arrow]] = None
    name: str = field(default="", compare=False)

    @cached_property
    def object_index(self) -> Dict[Obj, int]:
        return {x: k for k, x in enumerate(self.objects)}

    @cached_property
    def arrow_index(self) -> Dict[Arrow, int]:
        return {f: k for k, f in enumerate(self.arrows)}

    @cached_property
    def _homs(self) -> Dict[Tuple[Obj, Obj], List[Arrow]]:
        homs: Dict[Tuple[Obj, Obj], List[Arrow]] = {(x, y): [] for x in self.objects for y in self.objects}
        for f in self.arrows:
            homs.setdefault((self.s[f], self.t[f]), []).append(f)
        return homs

    @cached_property
    def _outgoing(self) -> Dict[Obj, List[Arrow]]:
        out: Dict[Obj, List[Arrow]] = {x: [] for x in self.objects}
        for f in self.arrows:
            out.setdefault(self.s[f], []).append(f)
        return out

    def hom(self, x: Obj, y: Obj) -> List[Arrow]:
        return self._homs.get((x, y), [])

    def arrows_from(self, x: Obj) -> List[Arrow]:
        return self._outgoing.get(x, [])

    def compose(self, f: Arrow, g: Arrow) -> Arrow:
        return self.m[(f, g)]

    def identity(self, x: Obj) -> Arrow:
        return self.e[x]

    @property
    def is_groupoid(self) -> bool:
        return self.i is not None

    def is_identity(self, f: Arrow) -> bool:
        return self.e.get(self.s[f]) == f

    def composable_pairs(self) -> Iterable[Tuple[Arrow, Arrow]]:
        for f in self.arrows:
            for g in self.arrows_from(self.t[f]):
                yield f, g

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "objects": [repr(x) for x in self.objects],
            "arrows": [repr(f) for f in self.arrows],
            "s": {repr(f): repr(x) for f, x in self.s.items()},
            "t": {repr(f): repr(x) for f, x in self.t.items()},
            "e": {repr(x): repr(f) for x, f in self.e.items()},
            "m": [[repr(f), repr(g), repr(h)] for (f, g), h in self.m.items()],
        }
        if self.i is not None:
            data["i"] = {repr(f): repr(g) for f, g in self.i.items()}
        return data


def _table_violations(c: FiniteCategory) -> List[AxiomViolation]:
    objects, arrows = set(c.objects), set(c.arrows)
    bad: List[AxiomViolation] = []
    for name, table, domain, codomain in (
        ("s", c.s, arrows, objects),
        ("t", c.t, arrows, objects),
        ("e", c.e, objects, arrows),
    ):
        for x in domain:
            if x not in table or table[x] not in codomain:
                bad.append(AxiomViolation(TABLES, (name, x)))
                break
    for (f, g), h in c.m.items():
        if f not in arrows or g not in arrows or h not in arrows:
            bad.append(AxiomViolation(TABLES, ("m", f, g)))
            break
    if c.i is not None:
        for f in arrows:
            if f not in c.i or c.i[f] not in arrows:
                bad.append(AxiomViolation(TABLES, ("i", f)))
                break
    return bad


def category_violations(c: FiniteCategory) -> List[AxiomViolation]:
    """Every violated equation, each with its first witness."""
    bad = _table_violations(c)
    if bad:
        return bad

    oi, ai = c.object_index, c.arrow_index
    arrows = c.arrows
    n_a = len(arrows)
    src = np.array([oi[c.s[f]] for f in arrows], dtype=np.int64)
    tgt = np.array([oi[c.t[f]] for f in arrows], dtype=np.int64)
    unit = np.array([ai[c.e[x]] for x in c.objects], dtype=np.int64)
    comp = np.full((n_a, n_a), -1, dtype=np.int64)
    for (f, g), h in c.m.items():
        comp[ai[f], ai[g]] = ai[h]

    violations: List[AxiomViolation] = []

    def report(equation: str, hits: np.ndarray, label) -> None:
        if hits.size:
            violations.append(AxiomViolation(equation, label(hits[0])))

    objects_range = np.arange(len(c.objects))
    arrows_range = np.arange(n_a)
    obj = lambda k: (c.objects[int(k)],)
    arr = lambda k: (arrows[int(k)],)
    pair = lambda fg: (arrows[int(fg[0])], arrows[int(fg[1])])

    report(S_E, np.nonzero(src[unit] != objects_range)[0], obj)
    report(T_E, np.nonzero(tgt[unit] != objects_range)[0], obj)

    composable = tgt[:, None] == src[None, :]
    defined = comp >= 0
    report(M_DOMAIN, np.argwhere(composable != defined), pair)

    pairs = np.argwhere(composable & defined)
    f_, g_ = pairs[:, 0], pairs[:, 1]
    h_ = comp[f_, g_]
    report(S_M, pairs[src[h_] != src[f_]], pair)
    report(T_M, pairs[tgt[h_] != tgt[g_]], pair)

    rows, ks = np.nonzero(composable[g_, :] & defined[g_, :])
    if rows.size:
        f3, g3, fg = f_[rows], g_[rows], h_[rows]
        gk = comp[g3, ks]
        fg_k = comp[fg, ks]
        f_gk = comp[f3, gk]
        wrong = (fg_k != f_gk) | (fg_k < 0)
        hits = np.nonzero(wrong)[0]
        if hits.size:
            k = hits[0]
            violations.append(AxiomViolation(ASSOC, (arrows[int(f3[k])], arrows[int(g3[k])], arrows[int(ks[k])])))

    report(LEFT_UNIT, np.nonzero(comp[unit[src], arrows_range] != arrows_range)[0], arr)
    report(RIGHT_UNIT, np.nonzero(comp[arrows_range, unit[tgt]] != arrows_range)[0], arr)

    if c.i is not None:
        inv = np.array([ai[c.i[f]] for f in arrows], dtype=np.int64)
        report(S_I, np.nonzero(src[inv] != tgt)[0], arr)
        report(T_I, np.nonzero(tgt[inv] != src)[0], arr)
        report(RIGHT_INVERSE, np.nonzero(comp[arrows_range, inv] != unit[src])[0], arr)
        report(LEFT_INVERSE, np.nonzero(comp[inv, arrows_range] != unit[tgt])[0], arr)
    return violations


def check_category(c: FiniteCategory) -> FiniteCategory:
    """Return `c` if it satisfies every equation, else raise with all violations."""
    violations = category_violations(c)
    if violations:
        raise CategoryAxiomError(violations)
    return c


# --- named constructions ---------------------------------------------------


def preorder_category(objects: Sequence[Obj], leq: Iterable[Tuple[Obj, Obj]], name: str = "") -> FiniteCategory:
    """
    The thin category of the reflexive-transitive closure of `leq`.

    Arrows are the pairs (x, y) with x ≤ y; an inverse table is added when the
    preorder is symmetric.
    """
    objects = tuple(objects)
    index = {x: k for k, x in enumerate(objects)}
    n = len(objects)
    reach = np.eye(n, dtype=bool)
    for x, y in leq:
        reach[index[x], index[y]] = True
    for k in range(n):
        reach |= reach[:, k:k + 1] & reach[k:k + 1, :]
    arrows = tuple((objects[a], objects[b]) for a in range(n) for b in range(n) if reach[a, b])
    s = {f: f[0] for f in arrows}
    t = {f: f[1] for f in arrows}
    e = {x: (x, x) for x in objects}
    m = {(f, g): (f[0], g[1]) for f in arrows for g in arrows if f[1] == g[0]}
    i = {f: (f[1], f[0]) for f in arrows} if bool((reach == reach.T).all()) else None
    return FiniteCategory(objects, arrows, s, t, e, m, i, name)


def terminal_category() -> FiniteCategory:
    return preorder_category(("*",), (), "terminal")


def discrete_category(objects: Sequence[Obj]) -> FiniteCategory:
    return preorder_category(objects, (), "discrete")


def codiscrete_category(objects: Sequence[Obj]) -> FiniteCategory:
    return preorder_category(objects, itertools.product(objects, objects), "codiscrete")


def free_arrow_category() -> FiniteCategory:
    return preorder_category(("a", "b"), (("a", "b"),), "arrow")


def named_category(name: str) -> FiniteCategory:
    """Small test categories by name: terminal, codiscrete2, arrow."""
    if name == "terminal":
        return terminal_category()
    if name == "codiscrete2":
        c = codiscrete_category(("x", "y"))
        return FiniteCategory(c.objects, c.arrows, c.s, c.t, c.e, c.m, c.i, "codiscrete2")
    if name == "arrow":
        return free_arrow_category()
    raise ValueError(f"unknown category '{name}'. Available: terminal, codiscrete2, arrow")
