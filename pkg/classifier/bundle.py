"""
The generic bundle: one presentation per sort whose points are (model,
class) pairs, the relation sublocales, and the action of the arrows.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from presentations import (
    DNF,
    FrameHomSpec,
    Generator,
    Presentation,
    PresentationExtension,
    Sequent,
    add_relations,
    dnf_atom,
    dnf_join_all,
    dnf_meet,
    dnf_meet_all,
    dnf_of_term,
    make_hom,
    relative_product,
)
from theory_dsl import Formula, Theory, Tru, infer_context
from theory_dsl.syntax import Context
from utils.errors import ClassifierError, TheoryError

from .arrows import ArrowLayer, _verified
from .lowering import lower_in_context
from .params import ParameterSet, alpha_id, at, equiv_id, equiv_template, rel_id, sim_id

logger = logging.getLogger(__name__)


def equiv_extension(sort: str, params: ParameterSet) -> PresentationExtension:
    """
    The generators [≡ p] over g0 with

        [≡p] ∧ [p∼q] ⊣⊢ [≡q] ∧ [p∼q]
        [≡p] ∧ [≡q] ⊢ [p∼q]
        ⊤ ⊢ ⋁ₚ [≡p]
        [≡p] ⊢ [p∼p]
    """
    P = params.tokens
    eq = lambda p: equiv_template(sort, p)
    sim = lambda p, q: sim_id(sort, p, q)
    generators = tuple(
        Generator.make(eq(p), f"[≡{{k}} {p}]:{sort}", kind="equiv", payload=(sort, p)) for p in P
    )
    relations: List[Sequent] = []
    for p, q in itertools.product(P, repeat=2):
        relations.append(Sequent.of([eq(p), sim(p, q)], [[eq(q), sim(p, q)]], "equiv-transport"))
        relations.append(Sequent.of([eq(q), sim(p, q)], [[eq(p), sim(p, q)]], "equiv-transport"))
    for p, q in itertools.product(P, repeat=2):
        relations.append(Sequent.of([eq(p), eq(q)], [[sim(p, q)]], "equiv-single"))
    relations.append(Sequent.of([], [[eq(p)] for p in P], "equiv-cover"))
    for p in P:
        relations.append(Sequent.of([eq(p)], [[sim(p, p)]], "equiv-support"))
    return PresentationExtension(f"E_{sort}", generators, tuple(relations))


@dataclass(frozen=True)
class SortBundle:
    """E_A over g0 with ρ_A, and the action θ out of E_A ×_{g0} g1."""

    sort: str
    total: Presentation
    rho: FrameHomSpec
    action_source: Presentation
    theta: FrameHomSpec
    unit_pairing: FrameHomSpec


def gen_sort_bundle(
    theory: Theory, params: ParameterSet, g0: Presentation, arrows: ArrowLayer, sort: str, verify: bool = True
) -> SortBundle:
    finish = _verified if verify else (lambda spec: spec)
    ext = equiv_extension(sort, params)
    total = relative_product(g0, [ext], f"E_{sort}")
    rho = finish(make_hom(g0, total, {g: dnf_atom(g) for g in g0.ids}, f"rho_{sort}"))

    g1 = arrows.arrows
    action_source = relative_product(g1, [ext.rebased(lambda gid: at(gid, 1))], f"E_{sort}xg1")
    P = params.tokens
    theta_table: Dict[str, DNF] = {g: dnf_atom(at(g, 2)) for g in g0.ids}
    for q in P:
        theta_table[equiv_id(sort, 1, q)] = dnf_join_all(
            dnf_of_term([equiv_id(sort, 1, p), alpha_id(sort, p, q)]) for p in P
        )
    theta = finish(make_hom(total, action_source, theta_table, f"theta_{sort}"))

    pairing: Dict[str, DNF] = {at(g, k): dnf_atom(g) for g in g0.ids for k in (1, 2)}
    for s in theory.sorts:
        for p, q in itertools.product(P, repeat=2):
            pairing[alpha_id(s, p, q)] = dnf_atom(sim_id(s, p, q))
    for p in P:
        pairing[equiv_id(sort, 1, p)] = dnf_atom(equiv_id(sort, 1, p))
    unit_pairing = finish(make_hom(action_source, total, pairing, f"unit_pairing_{sort}"))
    logger.info(f"generated {total.name}: {len(total)} generators")
    return SortBundle(sort, total, rho, action_source, theta, unit_pairing)


def context_product(g0: Presentation, params: ParameterSet, context: Context, name: str) -> Presentation:
    """The wide pullback over g0 of E_{A₁}, …, E_{Aₗ} for a context."""
    return relative_product(g0, [equiv_extension(sort, params) for _, sort in context], name)


def _defining_relation(
    params: ParameterSet, context: Context, formula: Formula, label: str
) -> Sequent:
    """⊤ ⊢ ⋁_{p⃗} φ_{p⃗} ∧ ⋀ᵢ [≡ᵢ pᵢ]."""
    terms: List[DNF] = []
    for values in itertools.product(params.tokens, repeat=len(context)):
        lowered = lower_in_context(formula, params, context, values)
        witnesses = dnf_meet_all(dnf_atom(equiv_id(sort, i, p)) for i, ((_, sort), p) in enumerate(zip(context, values), 1))
        terms.append(dnf_meet(lowered, witnesses))
    return Sequent.with_dnf([], dnf_join_all(terms), label)


def relation_context(theory: Theory, relation: str) -> Context:
    return tuple((f"x{i}", sort) for i, sort in enumerate(theory.arity(relation), 1))


def relation_sequent(theory: Theory, params: ParameterSet, relation: str) -> Sequent:
    """The single relation cutting R out of E_{A₁} ×_{g0} … ×_{g0} E_{Aₗ}."""
    context = relation_context(theory, relation)
    terms = []
    for values in itertools.product(params.tokens, repeat=len(context)):
        witnesses = [equiv_id(sort, i, p) for i, ((_, sort), p) in enumerate(zip(context, values), 1)]
        terms.append(dnf_of_term([rel_id(relation, values)] + witnesses))
    return Sequent.with_dnf([], dnf_join_all(terms), f"relation {relation}")


def relation_sublocale(theory: Theory, params: ParameterSet, g0: Presentation, relation: str) -> Presentation:
    context = relation_context(theory, relation)
    product = context_product(g0, params, context, f"E_{relation}")
    return add_relations(product, [relation_sequent(theory, params, relation)], f"R_{relation}")


def interpret_in_E(
    theory: Theory,
    params: ParameterSet,
    g0: Presentation,
    formula: Formula,
    context: Optional[Context] = None,
    name: str = "",
) -> Presentation:
    """
    The sublocale of the context product interpreting `formula`. Without an
    explicit context the free variables are typed from the formula itself.
    """
    if context is None:
        context = _infer_context(theory, formula)
    product = context_product(g0, params, context, name or "interpretation")
    return add_relations(product, [_defining_relation(params, context, formula, "interpretation")], name or "interpretation")


def _infer_context(theory: Theory, formula: Formula) -> Context:
    try:
        return infer_context(theory.signature, formula, Tru())
    except TheoryError as e:
        raise ClassifierError(f"cannot type the free variables of {formula!r}: {e}") from e


def relation_subs(theory: Theory, params: ParameterSet) -> Dict[str, Tuple[Sequent, ...]]:
    return {rel.name: (relation_sequent(theory, params, rel.name),) for rel in theory.relations}

