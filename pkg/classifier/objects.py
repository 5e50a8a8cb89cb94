"""
The object layer: a presentation whose points are the models of a theory
carried by subquotients of the parameter set.
"""

import itertools
import logging
from typing import List, Optional, Tuple

from presentations import Generator, Presentation, Sequent, dnf_meet
from theory_dsl import Theory

from .lowering import context_tuples, lower_in_context, support_guard
from .params import ParameterSet, at, rel_id, sim_id

logger = logging.getLogger(__name__)


def object_generators(theory: Theory, params: ParameterSet) -> Tuple[Generator, ...]:
    generators: List[Generator] = []
    for sort in theory.sorts:
        for p, q in itertools.product(params.tokens, repeat=2):
            generators.append(Generator.make(sim_id(sort, p, q), f"[{p} ∼{sort} {q}]", kind="sim", payload=(sort, p, q)))
    for rel in theory.relations:
        for args in itertools.product(params.tokens, repeat=len(rel.arity)):
            generators.append(
                Generator.make(rel_id(rel.name, args), f"[({','.join(args)}) ∈ {rel.name}]", kind="rel", payload=(rel.name,) + args)
            )
    return tuple(generators)


def object_relations(theory: Theory, params: ParameterSet) -> Tuple[Sequent, ...]:
    """
    Symmetry and transitivity of each ∼ᴬ, stability and strictness of each
    relation, then one lowered sequent per axiom, parameter tuple and lhs term.
    """
    P = params.tokens
    relations: List[Sequent] = []
    for sort in theory.sorts:
        for p, q in itertools.product(P, repeat=2):
            relations.append(Sequent.of([sim_id(sort, p, q)], [[sim_id(sort, q, p)]], "symmetry"))
        for p, q, r in itertools.product(P, repeat=3):
            relations.append(Sequent.of([sim_id(sort, p, q), sim_id(sort, q, r)], [[sim_id(sort, p, r)]], "transitivity"))
    for rel in theory.relations:
        k = len(rel.arity)
        for ps in itertools.product(P, repeat=k):
            for qs in itertools.product(P, repeat=k):
                lhs = [rel_id(rel.name, ps)] + [sim_id(s, p, q) for s, p, q in zip(rel.arity, ps, qs)]
                relations.append(Sequent.of(lhs, [[rel_id(rel.name, qs)]], "stability"))
        for ps in itertools.product(P, repeat=k):
            relations.append(
                Sequent.of([rel_id(rel.name, ps)], [[sim_id(s, p, p) for s, p in zip(rel.arity, ps)]], "strictness")
            )
    for n, axiom in enumerate(theory.axioms):
        for values in context_tuples(params, axiom.context):
            lhs = dnf_meet(support_guard(axiom.context, values), lower_in_context(axiom.lhs, params, axiom.context, values))
            rhs = lower_in_context(axiom.rhs, params, axiom.context, values)
            for term in lhs:
                relations.append(Sequent.with_dnf(term, rhs, f"axiom {n}"))
    return tuple(relations)


def gen_objects(theory: Theory, params: ParameterSet, name: Optional[str] = None) -> Presentation:
    pres = Presentation(
        object_generators(theory, params),
        object_relations(theory, params),
        params.presentation_orientation,
        name or "g0",
    )
    logger.info(f"generated {pres.name} for {theory.name}: {len(pres)} generators, {len(pres.relations)} relations")
    return pres


def copy_generator(g: Generator, copy: int) -> Generator:
    return Generator(at(g.id, copy), f"{g.display}{_subscript(copy)}", g.tags + (("copy", copy),))


def copy_layer(g0: Presentation, copy: int) -> Tuple[Tuple[Generator, ...], Tuple[Sequent, ...]]:
    """Generators and relations of g0 with every id moved into the given copy."""
    rename = lambda gid: at(gid, copy)
    return tuple(copy_generator(g, copy) for g in g0.generators), tuple(r.renamed(rename) for r in g0.relations)


_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _subscript(n: int) -> str:
    return str(n).translate(_SUBSCRIPTS)

