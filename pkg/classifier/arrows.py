"""
The arrow layers: homomorphisms between object-layer models, composable
pairs of them, and the invertible ones, with their structure maps.

Every structure map is a FrameHomSpec in the "inverse image" direction
(source = codomain of the locale map) and is verified before it is returned.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from presentations import (
    DNF,
    FrameHomSpec,
    Generator,
    Presentation,
    Sequent,
    check_frame_hom,
    dnf_atom,
    dnf_join_all,
    dnf_of_term,
    make_hom,
    require_verified,
)
from theory_dsl import Theory
from utils.errors import ClassifierError

from .objects import copy_layer
from .params import ParameterSet, alpha_id, at, map_id, rel_id, sim_id

logger = logging.getLogger(__name__)


def map_generators(theory: Theory, params: ParameterSet, name: str, src: int, dst: int) -> Tuple[Generator, ...]:
    return tuple(
        Generator.make(
            map_id(name, sort, p, q),
            f"[{name}{sort}({p}) = {q}]",
            kind=name,
            payload=(sort, p, q),
            copies=(src, dst),
        )
        for sort in theory.sorts
        for p, q in itertools.product(params.tokens, repeat=2)
    )


def map_relations(
    theory: Theory, params: ParameterSet, name: str, src: int, dst: int, invertible: bool = False
) -> Tuple[Sequent, ...]:
    """
    The axioms making `name` the graph of a homomorphism from copy `src` to
    copy `dst`: single-valued on classes, total on the support, supported on
    both sides, saturated under both equivalences, and preserving each
    relation. With `invertible`, also injective, surjective and reflecting.
    """
    P = params.tokens
    s = lambda gid: at(gid, src)
    d = lambda gid: at(gid, dst)
    f = lambda sort, p, q: map_id(name, sort, p, q)
    out: List[Sequent] = []
    for sort in theory.sorts:
        for p, p2, q, q2 in itertools.product(P, repeat=4):
            out.append(
                Sequent.of([f(sort, p, q), f(sort, p2, q2), s(sim_id(sort, p, p2))], [[d(sim_id(sort, q, q2))]], "functional")
            )
        for p in P:
            out.append(Sequent.of([s(sim_id(sort, p, p))], [[f(sort, p, q)] for q in P], "total"))
        for p, q in itertools.product(P, repeat=2):
            out.append(Sequent.of([f(sort, p, q)], [[s(sim_id(sort, p, p)), d(sim_id(sort, q, q))]], "support"))
        for p, q, p2, q2 in itertools.product(P, repeat=4):
            out.append(
                Sequent.of(
                    [f(sort, p, q), s(sim_id(sort, p, p2)), d(sim_id(sort, q, q2))], [[f(sort, p2, q2)]], "saturation"
                )
            )
        if invertible:
            for p, p2, q, q2 in itertools.product(P, repeat=4):
                out.append(
                    Sequent.of(
                        [f(sort, p, q), f(sort, p2, q2), d(sim_id(sort, q, q2))], [[s(sim_id(sort, p, p2))]], "injective"
                    )
                )
            for q in P:
                out.append(Sequent.of([d(sim_id(sort, q, q))], [[f(sort, p, q)] for p in P], "surjective"))
    for rel in theory.relations:
        k = len(rel.arity)
        for ps in itertools.product(P, repeat=k):
            for qs in itertools.product(P, repeat=k):
                graph = [f(sort, p, q) for sort, p, q in zip(rel.arity, ps, qs)]
                out.append(Sequent.of([s(rel_id(rel.name, ps))] + graph, [[d(rel_id(rel.name, qs))]], "preserves"))
                if invertible:
                    out.append(Sequent.of([d(rel_id(rel.name, qs))] + graph, [[s(rel_id(rel.name, ps))]], "reflects"))
    return tuple(out)


def layered_presentation(
    theory: Theory,
    params: ParameterSet,
    g0: Presentation,
    copies: int,
    maps: Sequence[Tuple[str, int, int]],
    invertible: bool,
    name: str,
) -> Presentation:
    """`copies` copies of g0 glued by the named map generators."""
    generators: List[Generator] = []
    relations: List[Sequent] = []
    for k in range(1, copies + 1):
        gens, rels = copy_layer(g0, k)
        generators.extend(gens)
        relations.extend(rels)
    for map_name, src, dst in maps:
        generators.extend(map_generators(theory, params, map_name, src, dst))
        relations.extend(map_relations(theory, params, map_name, src, dst, invertible))
    return Presentation(tuple(generators), tuple(relations), params.presentation_orientation, name)


def _verified(spec: FrameHomSpec) -> FrameHomSpec:
    checked = check_frame_hom(spec)
    if not checked.verified:
        failure = checked.failure
        raise ClassifierError(f"structure map {spec.name} failed verification on relation {failure.relation}")
    logger.debug(f"structure map {spec.name} verified")
    return require_verified(checked)


def _copy_map(g0: Presentation, copy: int) -> Dict[str, DNF]:
    return {g: dnf_atom(at(g, copy)) for g in g0.ids}


def _map_table(theory: Theory, params: ParameterSet, src_name: str, image) -> Dict[str, DNF]:
    return {
        map_id(src_name, sort, p, q): image(sort, p, q)
        for sort in theory.sorts
        for p, q in itertools.product(params.tokens, repeat=2)
    }


@dataclass(frozen=True)
class ArrowLayer:
    """Arrows (or invertible arrows) with their structure maps."""

    arrows: Presentation
    pairs: Presentation
    s: FrameHomSpec
    t: FrameHomSpec
    e: FrameHomSpec
    m: FrameHomSpec
    pi1: FrameHomSpec
    pi2: FrameHomSpec
    i: Optional[FrameHomSpec] = None

    def homs(self) -> Dict[str, FrameHomSpec]:
        named = {"s": self.s, "t": self.t, "e": self.e, "m": self.m, "pi1": self.pi1, "pi2": self.pi2}
        if self.i is not None:
            named["i"] = self.i
        return named


def _build_layer(
    theory: Theory, params: ParameterSet, g0: Presentation, invertible: bool, verify: bool = True
) -> ArrowLayer:
    tag = "_core" if invertible else ""
    g1 = layered_presentation(theory, params, g0, 2, [("alpha", 1, 2)], invertible, f"g1{tag}")
    g1g1 = layered_presentation(theory, params, g0, 3, [("beta", 1, 2), ("gamma", 2, 3)], invertible, f"g1g1{tag}")
    P = params.tokens
    finish = _verified if verify else (lambda spec: spec)

    s = finish(make_hom(g0, g1, _copy_map(g0, 1), f"s{tag}"))
    t = finish(make_hom(g0, g1, _copy_map(g0, 2), f"t{tag}"))

    e_table = {at(g, 1): dnf_atom(g) for g in g0.ids}
    e_table.update({at(g, 2): dnf_atom(g) for g in g0.ids})
    e_table.update(_map_table(theory, params, "alpha", lambda sort, p, q: dnf_atom(sim_id(sort, p, q))))
    e = finish(make_hom(g1, g0, e_table, f"e{tag}"))

    m_table = {at(g, 1): dnf_atom(at(g, 1)) for g in g0.ids}
    m_table.update({at(g, 2): dnf_atom(at(g, 3)) for g in g0.ids})
    m_table.update(
        _map_table(
            theory,
            params,
            "alpha",
            lambda sort, p, r: dnf_join_all(
                dnf_of_term([map_id("beta", sort, p, q), map_id("gamma", sort, q, r)]) for q in P
            ),
        )
    )
    m = finish(make_hom(g1, g1g1, m_table, f"m{tag}"))

    pi1_table = {at(g, k): dnf_atom(at(g, k)) for g in g0.ids for k in (1, 2)}
    pi1_table.update(_map_table(theory, params, "alpha", lambda sort, p, q: dnf_atom(map_id("beta", sort, p, q))))
    pi1 = finish(make_hom(g1, g1g1, pi1_table, f"pi1{tag}"))

    pi2_table = {at(g, k): dnf_atom(at(g, k + 1)) for g in g0.ids for k in (1, 2)}
    pi2_table.update(_map_table(theory, params, "alpha", lambda sort, p, q: dnf_atom(map_id("gamma", sort, p, q))))
    pi2 = finish(make_hom(g1, g1g1, pi2_table, f"pi2{tag}"))

    i = None
    if invertible:
        i_table = {at(g, 1): dnf_atom(at(g, 2)) for g in g0.ids}
        i_table.update({at(g, 2): dnf_atom(at(g, 1)) for g in g0.ids})
        i_table.update(_map_table(theory, params, "alpha", lambda sort, p, q: dnf_atom(alpha_id(sort, q, p))))
        i = finish(make_hom(g1, g1, i_table, "i"))

    logger.info(
        f"generated {g1.name} for {theory.name}: {len(g1)} generators, {len(g1.relations)} relations"
    )
    return ArrowLayer(g1, g1g1, s, t, e, m, pi1, pi2, i)


def gen_arrows(theory: Theory, params: ParameterSet, g0: Presentation, verify: bool = True) -> ArrowLayer:
    return _build_layer(theory, params, g0, invertible=False, verify=verify)


def gen_core(theory: Theory, params: ParameterSet, g0: Presentation, verify: bool = True) -> ArrowLayer:
    """The invertible arrows; `i` swaps the copies and transposes each α."""
    return _build_layer(theory, params, g0, invertible=True, verify=verify)


def core_inclusion_hom(arrows: ArrowLayer, core: ArrowLayer, verify: bool = True) -> FrameHomSpec:
    """The closed embedding of the invertible arrows: every generator to itself."""
    spec = make_hom(arrows.arrows, core.arrows, {g: dnf_atom(g) for g in arrows.arrows.ids}, "core_inclusion")
    return _verified(spec) if verify else spec
