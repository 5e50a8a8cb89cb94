"""
Assembling every layer of the classifier for one theory and parameter set.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from presentations import FrameHomSpec, Presentation, Sequent
from theory_dsl import Theory

from .arrows import ArrowLayer, core_inclusion_hom, gen_arrows, gen_core
from .bundle import SortBundle, gen_sort_bundle, relation_subs, relation_sublocale
from .objects import gen_objects
from .params import ParameterSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassifierBundle:
    theory: Theory
    params: ParameterSet
    g0: Presentation
    arrows: ArrowLayer
    core: ArrowLayer
    core_inclusion: FrameHomSpec
    sorts: Dict[str, SortBundle]
    rel_subs: Dict[str, Tuple[Sequent, ...]]
    _sublocales: Dict[str, Presentation] = field(default_factory=dict, compare=False, repr=False)

    @property
    def g1(self) -> Presentation:
        return self.arrows.arrows

    @property
    def g1_core(self) -> Presentation:
        return self.core.arrows

    @property
    def s(self) -> FrameHomSpec:
        return self.arrows.s

    @property
    def t(self) -> FrameHomSpec:
        return self.arrows.t

    @property
    def e(self) -> FrameHomSpec:
        return self.arrows.e

    @property
    def m(self) -> FrameHomSpec:
        return self.arrows.m

    @property
    def i(self) -> FrameHomSpec:
        return self.core.i

    def layer(self, core: bool = False) -> ArrowLayer:
        return self.core if core else self.arrows

    def sort_bundle(self, sort: str) -> SortBundle:
        if sort not in self.sorts:
            raise KeyError(f"unknown sort '{sort}'. Available: {', '.join(self.sorts)}")
        return self.sorts[sort]

    def relation_sublocale(self, relation: str) -> Presentation:
        if relation not in self._sublocales:
            self._sublocales[relation] = relation_sublocale(self.theory, self.params, self.g0, relation)
        return self._sublocales[relation]

    def presentations(self) -> Dict[str, Presentation]:
        named = {
            "g0": self.g0,
            "g1": self.g1,
            "g1g1": self.arrows.pairs,
            "g1_core": self.g1_core,
            "g1g1_core": self.core.pairs,
        }
        for sort, sb in self.sorts.items():
            named[f"E_{sort}"] = sb.total
            named[f"E_{sort}xg1"] = sb.action_source
        return named

    def homs(self) -> Dict[str, FrameHomSpec]:
        named = dict(self.arrows.homs())
        named.update({f"{k}_core": v for k, v in self.core.homs().items() if k != "i"})
        named["i"] = self.core.i
        named["core_inclusion"] = self.core_inclusion
        for sort, sb in self.sorts.items():
            named[f"rho_{sort}"] = sb.rho
            named[f"theta_{sort}"] = sb.theta
            named[f"unit_pairing_{sort}"] = sb.unit_pairing
        return named


def gen_generic_bundle(
    theory: Theory,
    params: ParameterSet,
    g0: Optional[Presentation] = None,
    arrows: Optional[ArrowLayer] = None,
    verify: bool = True,
) -> Tuple[Dict[str, SortBundle], Dict[str, Tuple[Sequent, ...]]]:
    """Each sort's E_A with ρ_A and θ, together with the defining relation of every relation sublocale."""
    g0 = g0 if g0 is not None else gen_objects(theory, params)
    arrows = arrows if arrows is not None else gen_arrows(theory, params, g0, verify)
    sorts = {sort: gen_sort_bundle(theory, params, g0, arrows, sort, verify) for sort in theory.sorts}
    return sorts, relation_subs(theory, params)


def gen_action(theory: Theory, params: ParameterSet, verify: bool = True) -> Dict[str, FrameHomSpec]:
    sorts, _ = gen_generic_bundle(theory, params, verify=verify)
    return {sort: bundle.theta for sort, bundle in sorts.items()}


def build_classifier(theory: Theory, params: ParameterSet, verify: bool = True) -> ClassifierBundle:
    """
    Generate g0, g1, the composable pairs, the core, and each sort's bundle
    and action. With `verify` every structure map is checked as a frame hom
    and generation fails with ClassifierError on the first that is not.
    """
    logger.info(f"building classifier for {theory.name} over |P| = {len(params)} ({params.orientation.value})")
    g0 = gen_objects(theory, params)
    arrows = gen_arrows(theory, params, g0, verify)
    core = gen_core(theory, params, g0, verify)
    inclusion = core_inclusion_hom(arrows, core, verify)
    sorts, subs = gen_generic_bundle(theory, params, g0, arrows, verify)
    return ClassifierBundle(theory, params, g0, arrows, core, inclusion, sorts, subs)


def classifier_for(theory: Theory, parameters: int, orientation: Optional[str] = None) -> ClassifierBundle:
    """Convenience wrapper taking |P| and an orientation name."""
    params = ParameterSet.of_size(parameters, orientation or theory.orientation)
    return build_classifier(theory, params)
