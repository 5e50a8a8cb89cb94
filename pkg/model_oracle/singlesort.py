"""
Checking that collapsing sorts does not change the models: every model of
T translates to a model of singlesort(T), every model of singlesort(T)
splits back into a model of T, and both round trips are isomorphisms.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List

from classifier.params import ParameterSet
from theory_dsl import Theory, singlesort, sort_predicate_names
from theory_dsl.transforms import singlesort_name

from .homs import find_model_iso
from .models import PERModel, enumerate_models, model_violations

logger = logging.getLogger(__name__)


def tagged_params(theory: Theory, params: ParameterSet) -> ParameterSet:
    """One token `<sort>.<p>` per sort and parameter: room for every carrier side by side."""
    return ParameterSet(tuple(f"{sort}.{p}" for sort in theory.sorts for p in params.tokens), params.orientation)


def singlesort_translation(model: PERModel, single: Theory) -> PERModel:
    theory = model.theory
    if len(theory.sorts) <= 1:
        return model
    params = tagged_params(theory, model.params)
    predicate = sort_predicate_names(theory)
    tag = lambda sort, p: f"{sort}.{p}"
    universe = {(tag(sort, p), tag(sort, q)) for sort in theory.sorts for p, q in model.sim(sort)}
    relations: Dict[str, List] = {}
    for sort in theory.sorts:
        relations[predicate[sort]] = [(tag(sort, p),) for p in model.support(sort)]
    for rel in theory.relations:
        relations[rel.name] = [
            tuple(tag(sort, p) for sort, p in zip(rel.arity, args)) for args in model.relation_params(rel.name)
        ]
    return PERModel(
        single,
        params,
        (frozenset(universe),),
        tuple(frozenset(relations[rel.name]) for rel in single.relations),
    )


def singlesort_split(single_model: PERModel, theory: Theory) -> PERModel:
    """The inverse reading: the A-carrier is the part of the universe in U_A."""
    if len(theory.sorts) <= 1:
        return single_model
    predicate = sort_predicate_names(theory)
    universe = single_model.sims[0]
    sims = []
    for sort in theory.sorts:
        members = {args[0] for args in single_model.relation_params(predicate[sort])}
        sims.append(frozenset((p, q) for p, q in universe if p in members and q in members))
    rels = tuple(single_model.relation_params(rel.name) for rel in theory.relations)
    return PERModel(theory, single_model.params, tuple(sims), rels)


@dataclass
class SinglesortReport:
    theory: str
    models: int
    single_models: int
    problems: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.problems

    def to_dict(self) -> Dict[str, object]:
        return {
            "theory": self.theory,
            "models": self.models,
            "single_models": self.single_models,
            "problems": self.problems,
            "passed": self.passed,
        }


def singlesort_equivalence(theory: Theory, params: ParameterSet) -> SinglesortReport:
    single = singlesort(theory)
    models = enumerate_models(theory, params)
    single_models = enumerate_models(single, params)
    report = SinglesortReport(theory.name, len(models), len(single_models))
    if single.sorts != (singlesort_name(theory),) and len(theory.sorts) > 1:
        report.problems.append(f"unexpected sorts {single.sorts}")
        return report
    for M in models:
        translated = singlesort_translation(M, single)
        bad = model_violations(translated)
        if bad:
            report.problems.append(f"[{M.describe()}] translates to a non-model: {bad[0].equation}")
            continue
        if find_model_iso(singlesort_split(translated, theory), M) is None:
            report.problems.append(f"[{M.describe()}] does not survive the round trip")
    for N in single_models:
        split = singlesort_split(N, theory)
        bad = model_violations(split)
        if bad:
            report.problems.append(f"[{N.describe()}] splits into a non-model: {bad[0].equation}")
            continue
        if find_model_iso(singlesort_translation(split, single), N) is None:
            report.problems.append(f"[{N.describe()}] does not survive the round trip")
    logger.debug(f"singlesort check for {theory.name}: {len(report.problems)} problems")
    return report
