"""
ζ at desk scale: functors K → points of the classifier, read as models
over K by pulling back the generic model, against the models over K.

Full and faithful: transformations Φ ⇒ Ψ biject with model homs
Φ*E → Ψ*E (isomorphisms for the core). Essentially surjective: every model
over K whose fibers fit in P is the pullback of E along its representing
anafunctor.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from classifier import ClassifierBundle, point_category
from internal_cat import FiniteCategory, InternalFunctor, enumerate_functors, enumerate_transformations
from model_oracle import (
    BundleModel,
    PERModel,
    base_change,
    bundle_model_violations,
    constant_bundle_model,
    enumerate_bundle_homs,
    enumerate_models_over,
    generic_bundle_model,
    is_bundle_model_iso,
    transformation_action,
)
from utils.errors import LocgenError

from .anafunctor import build_representing_anafunctor, verify_pullback_iso

logger = logging.getLogger(__name__)


@dataclass
class ZetaReport:
    theory: str
    category: str
    core: bool
    functors: int = 0
    pairs: int = 0
    models: int = 0
    full_faithful_problems: List[str] = field(default_factory=list)
    surjectivity_problems: List[str] = field(default_factory=list)

    @property
    def problems(self) -> List[str]:
        return self.full_faithful_problems + self.surjectivity_problems

    @property
    def full_faithful(self) -> bool:
        return not self.full_faithful_problems

    @property
    def essentially_surjective(self) -> bool:
        return not self.surjectivity_problems

    @property
    def passed(self) -> bool:
        return not self.problems

    def to_dict(self) -> Dict[str, object]:
        return {
            "theory": self.theory,
            "category": self.category,
            "core": self.core,
            "functors": self.functors,
            "pairs": self.pairs,
            "models": self.models,
            "full_faithful": self.full_faithful_problems,
            "essentially_surjective": self.surjectivity_problems,
            "passed": self.passed,
        }


def _label(F: InternalFunctor, index: Dict) -> str:
    return "(" + ",".join(str(index[F.obj(x)]) for x in F.source.objects) + ")"


def _check_pair(
    generic: BundleModel, Phi: InternalFunctor, Psi: InternalFunctor, core: bool, tag: str
) -> Optional[str]:
    transformations = enumerate_transformations(Phi, Psi)
    images = [transformation_action(tau, generic) for tau in transformations]
    if len(set(images)) != len(images):
        return f"{tag}: distinct transformations act identically (not faithful)"
    homs = enumerate_bundle_homs(base_change(Phi, generic), base_change(Psi, generic))
    if core:
        homs = [f for f in homs if is_bundle_model_iso(f)]
    if set(images) != set(homs):
        return f"{tag}: {len(transformations)} transformations against {len(homs)} model homs (not full)"
    return None


def check_full_faithful(
    generic: BundleModel, points: FiniteCategory, K: FiniteCategory, core: bool, report: ZetaReport
) -> None:
    functors = enumerate_functors(K, points)
    index = {x: k for k, x in enumerate(points.objects)}
    report.functors = len(functors)
    for Phi in functors:
        pulled = base_change(Phi, generic)
        bad = bundle_model_violations(pulled)
        if bad:
            report.full_faithful_problems.append(f"Φ={_label(Phi, index)}: Φ*E is not a model ({bad[0].equation})")
    for Phi in functors:
        for Psi in functors:
            report.pairs += 1
            problem = _check_pair(generic, Phi, Psi, core, f"Φ={_label(Phi, index)} Ψ={_label(Psi, index)}")
            if problem:
                report.full_faithful_problems.append(problem)


def check_essentially_surjective(
    bundle: ClassifierBundle,
    generic: BundleModel,
    points: FiniteCategory,
    models: Sequence[BundleModel],
    core: bool,
    report: ZetaReport,
) -> None:
    for M in models:
        report.models += 1
        try:
            anaf = build_representing_anafunctor(bundle, M, points, generic, core)
            verify_pullback_iso(anaf)
        except LocgenError as e:
            report.surjectivity_problems.append(f"model {report.models} ({M.name}): {e}")


def verify_zeta(
    bundle: ClassifierBundle,
    K: FiniteCategory,
    core: bool = False,
    models: Optional[Sequence[PERModel]] = None,
    extra: Sequence[BundleModel] = (),
) -> ZetaReport:
    """
    Run both halves of the check over K. By default every model over K whose
    fibers fit in the bundle's parameters is represented, one per functor
    into the category of set-models; `models` replaces them with the given
    set-models taken constant over K, and `extra` adds further models over K.
    """
    report = ZetaReport(bundle.theory.name, K.name, core)
    if core and not K.is_groupoid:
        report.full_faithful_problems.append(f"{K.name} is not a groupoid; the core variant needs one")
        return report
    points = point_category(bundle, core)
    generic = generic_bundle_model(bundle, core, points)
    check_full_faithful(generic, points, K, core, report)
    if models is None:
        over_k = enumerate_models_over(K, bundle.theory, bundle.params, core)
    else:
        over_k = [constant_bundle_model(K, m) for m in models]
    check_essentially_surjective(bundle, generic, points, over_k + list(extra), core, report)
    logger.info(
        f"zeta over {K.name}{' (core)' if core else ''}: {report.functors} functors, "
        f"{report.pairs} pairs, {report.models} models, {len(report.problems)} problems"
    )
    return report
