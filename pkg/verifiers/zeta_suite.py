"""
Suites about the classifier as a whole: ζ over small categories, and the
classifier of a disjoint union of theories.
"""

import logging
from typing import Any, Dict, List

import numpy as np

from classifier import ParameterSet, classifier_product_check
from forcing import verify_zeta
from internal_cat import FiniteCategory, named_category
from model_oracle import BundleModel, bundle_model_violations, random_bundle_model

from .base import SuiteInstance, VerificationSuite, score

logger = logging.getLogger(__name__)


class ZetaSuite(VerificationSuite):
    """Functors into the points of the classifier are models over K, fully and faithfully."""

    name = "zeta"
    extra_models = 3
    draws = 20

    def setup_instances(self) -> List[SuiteInstance]:
        instances = []
        for theory in self.settings.zeta_theories:
            for category in self.settings.zeta_categories:
                K = named_category(category)
                for core in (False, True) if K.is_groupoid else (False,):
                    tag = f"{theory}/{category}{'/core' if core else ''}"
                    instances.append(SuiteInstance(tag, {"theory": theory, "category": category, "core": core}))
        return instances

    def random_models(self, K: FiniteCategory, theory_name: str, room: int) -> List[BundleModel]:
        """Seeded random models over K that satisfy the axioms and fit in the parameters."""
        rng = np.random.default_rng(self.settings.seed)
        theory = self.theory(theory_name)
        found: List[BundleModel] = []
        for _ in range(self.draws):
            M = random_bundle_model(rng, K, theory)
            if M.max_fiber() <= room and not bundle_model_violations(M):
                found.append(M)
            if len(found) == self.extra_models:
                break
        return found

    def verify_instance(self, instance: SuiteInstance) -> Dict[str, Any]:
        payload = instance.payload
        bundle = self.bundle(payload["theory"])
        K = named_category(payload["category"])
        extra = self.random_models(K, payload["theory"], len(bundle.params))
        report = verify_zeta(bundle, K, payload["core"], extra=extra)
        witness = report.to_dict()
        return {
            "full_faithful": score(report.full_faithful),
            "essentially_surjective": score(report.essentially_surjective),
            "witness": {"full_faithful": witness, "essentially_surjective": witness},
        }


class ProductSuite(VerificationSuite):
    """Points of the union classifier split as pairs of points, on objects and arrows."""

    name = "product"

    def setup_instances(self) -> List[SuiteInstance]:
        return [
            SuiteInstance(f"{left}+{right}", {"left": left, "right": right})
            for left, right in self.settings.product_pairs
        ]

    def verify_instance(self, instance: SuiteInstance) -> Dict[str, Any]:
        left = self.theory(instance.payload["left"])
        right = self.theory(instance.payload["right"])
        params = ParameterSet.of_size(self.settings.parameters, self.settings.orientation or left.orientation)
        layers = classifier_product_check(left, right, params)
        details: Dict[str, Any] = {"witness": {}}
        for name, layer in layers.items():
            details[name] = score(layer.bijective)
            details["witness"][name] = layer.to_dict()
        return details
