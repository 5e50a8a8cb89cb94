"""
Suites over the corpus classifiers: point/model bijections per layer,
structure maps read on points, and soundness of the generic model.
"""

import logging
from typing import Any, Dict, List

from classifier import point_category
from internal_cat import category_violations
from model_oracle import (
    certify_layer,
    enumerate_models,
    interpretation_agreement,
    singlesort_equivalence,
    soundness_problems,
    structure_checks,
    theta_checks,
)
from theory_dsl import Rel

from .base import SuiteInstance, VerificationSuite, corpus_bundle, score

logger = logging.getLogger(__name__)


class BijectionsSuite(VerificationSuite):
    """points(g0) ↔ models, points(g1) ↔ homs, points(core) ↔ isos, points(E_A) ↔ elements."""

    name = "bijections"

    def setup_instances(self) -> List[SuiteInstance]:
        return [
            SuiteInstance(f"{theory}@{p}", {"theory": theory, "parameters": p})
            for theory in self.settings.theories
            for p in range(self.settings.parameters + 1)
        ]

    def verify_instance(self, instance: SuiteInstance) -> Dict[str, Any]:
        bundle = self.bundle(instance.payload["theory"], instance.payload["parameters"])
        models = enumerate_models(bundle.theory, bundle.params)
        layers = ["objects", "arrows", "core"] + [f"E:{sort}" for sort in bundle.theory.sorts]
        details: Dict[str, Any] = {"witness": {}}
        for layer in layers:
            cert = certify_layer(bundle, layer, models)
            details[layer] = score(cert.passed)
            details["witness"][layer] = {
                "points": cert.point_count,
                "oracle": cert.oracle_count,
                "problems": cert.problems[:3],
            }
        return details


class StructuresSuite(VerificationSuite):
    """s, t, e, m, i and θ act on points as the model operations; the point categories are categories."""

    name = "structures"

    def setup_instances(self) -> List[SuiteInstance]:
        return [SuiteInstance(theory, {"theory": theory}) for theory in self.settings.theories]

    def verify_instance(self, instance: SuiteInstance) -> Dict[str, Any]:
        bundle = self.bundle(instance.payload["theory"])
        details: Dict[str, Any] = {"witness": {}}
        details["homs_verified"] = score(all(h.verified for h in bundle.homs().values()))
        details["witness"]["homs_verified"] = sorted(name for name, h in bundle.homs().items() if not h.verified)
        for core in (False, True):
            suffix = "_core" if core else ""
            for name, problems in structure_checks(bundle, core).items():
                details[f"{name}{suffix}"] = score(not problems)
                details["witness"][f"{name}{suffix}"] = problems[:3]
            bad = category_violations(point_category(bundle, core))
            details[f"category{suffix}"] = score(not bad)
            details["witness"][f"category{suffix}"] = [v.to_dict() for v in bad[:3]]
        for sort in bundle.theory.sorts:
            problems = theta_checks(bundle, sort)
            details[f"theta_{sort}"] = score(not problems)
            details["witness"][f"theta_{sort}"] = problems[:3]
        if len(bundle.theory.sorts) > 1:
            report = singlesort_equivalence(bundle.theory, bundle.params)
            details["singlesort"] = score(report.passed)
            details["witness"]["singlesort"] = report.to_dict()
        return details


class SoundnessSuite(VerificationSuite):
    """Axioms hold in the generic model, and E interprets formulas as the oracle does, in both orientations."""

    name = "soundness"

    def setup_instances(self) -> List[SuiteInstance]:
        return [
            SuiteInstance(f"{theory}/{orientation}", {"theory": theory, "orientation": orientation})
            for theory in self.settings.theories
            for orientation in ("LH", "PS")
        ]

    def verify_instance(self, instance: SuiteInstance) -> Dict[str, Any]:
        path = str(self.settings.theory_path(instance.payload["theory"]))
        bundle = corpus_bundle(path, self.settings.parameters, instance.payload["orientation"])
        models = enumerate_models(bundle.theory, bundle.params)
        details: Dict[str, Any] = {"witness": {}}
        problems = soundness_problems(bundle)
        details["axioms_sound"] = score(not problems)
        details["witness"]["axioms_sound"] = problems[:3]
        disagreements: List[str] = []
        for rel in bundle.theory.relations:
            context = tuple((f"x{k}", sort) for k, sort in enumerate(rel.arity))
            formula = Rel(rel.name, tuple(var for var, _ in context))
            disagreements += [f"{rel.name}: {p}" for p in interpretation_agreement(bundle, formula, context, models)]
        for n, axiom in enumerate(bundle.theory.axioms):
            for side in ("lhs", "rhs"):
                found = interpretation_agreement(bundle, getattr(axiom, side), axiom.context, models)
                disagreements += [f"axiom {n} {side}: {p}" for p in found]
        details["interpretation"] = score(not disagreements)
        details["witness"]["interpretation"] = disagreements[:3]
        return details
