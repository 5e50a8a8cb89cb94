"""
Seeded suites on finite categories: base change of structures, descent
along fully faithful surjections, and canonical 2-cells.
"""

import logging
from typing import Any, Dict, List, Tuple

import numpy as np

from internal_cat import (
    action_to_dofib,
    compose_functors,
    descend_dofib,
    enumerate_transformations,
    find_action_iso,
    pullback_sheaf,
    two_cell_canonical,
)
from internal_cat.random_instances import (
    random_action,
    random_fattening,
    random_functor,
    random_preorder,
    random_two_cell_datum,
)
from model_oracle import (
    BundleModelHom,
    base_change,
    bundle_model_violations,
    interpret_formula,
    is_bundle_model_iso,
    random_bundle_model,
)
from theory_dsl import Formula, Rel, Theory, Tru
from theory_dsl.syntax import Context

from .base import SuiteInstance, VerificationSuite, score

logger = logging.getLogger(__name__)


def probe_formulas(theory: Theory) -> List[Tuple[Formula, Context]]:
    """Relation atoms and both sides of every axiom, each in its context."""
    formulas: List[Tuple[Formula, Context]] = [(Tru(), ())]
    for rel in theory.relations:
        context = tuple((f"x{k}", sort) for k, sort in enumerate(rel.arity))
        formulas.append((Rel(rel.name, tuple(var for var, _ in context)), context))
    for axiom in theory.axioms:
        formulas += [(axiom.lhs, axiom.context), (axiom.rhs, axiom.context)]
    return formulas


class BaseChangeSuite(VerificationSuite):
    """Interpretation commutes with pulling back along a functor, and pullback is functorial."""

    name = "basechange"

    def setup_instances(self) -> List[SuiteInstance]:
        rng = np.random.default_rng(self.settings.seed)
        theories = list(self.settings.theories)
        instances = []
        for k in range(self.settings.random_instances):
            theory = self.theory(theories[k % len(theories)])
            H = random_preorder(rng, int(rng.integers(1, self.settings.max_objects + 1)), name="H")
            K = random_preorder(rng, int(rng.integers(1, self.settings.max_objects + 1)), name="K")
            L = random_preorder(rng, int(rng.integers(1, self.settings.max_objects + 1)), name="L")
            payload = {
                "Phi": random_functor(rng, H, K),
                "Psi": random_functor(rng, L, H),
                "model": random_bundle_model(rng, K, theory),
            }
            formulas = probe_formulas(theory)
            payload["formula"] = formulas[int(rng.integers(len(formulas)))]
            instances.append(SuiteInstance(f"{theory.name}_{k}", payload))
        return instances

    def verify_instance(self, instance: SuiteInstance) -> Dict[str, Any]:
        Phi, Psi, M = instance.payload["Phi"], instance.payload["Psi"], instance.payload["model"]
        formula, context = instance.payload["formula"]
        pulled = base_change(Phi, M)
        downstairs = interpret_formula(M, formula, context)
        expected = {
            (h,) + tuple((h, y) for y in row[1:])
            for h in Phi.source.objects
            for row in downstairs
            if row[0] == Phi.obj(h)
        }
        upstairs = set(interpret_formula(pulled, formula, context))

        twice = base_change(Psi, pulled)
        once = base_change(compose_functors(Psi, Phi), M)
        maps = {
            sort: {(z, y): (z, (Psi.obj(z), y)) for z, y in once.action(sort).elements} for sort in M.theory.sorts
        }
        return {
            "structure": score(not bundle_model_violations(pulled, axioms=False)),
            "interpretation": score(upstairs == expected),
            "functorial": score(is_bundle_model_iso(BundleModelHom(once, twice, maps))),
            "witness": {"interpretation": [len(upstairs), len(expected)]},
        }


class DescentSuite(VerificationSuite):
    """Descend-then-pull-back and pull-back-then-descend both return isomorphic bundles."""

    name = "descent"

    def setup_instances(self) -> List[SuiteInstance]:
        rng = np.random.default_rng(self.settings.seed)
        instances = []
        for k in range(self.settings.random_instances):
            K = random_preorder(rng, int(rng.integers(1, self.settings.max_objects + 1)), name="K")
            middle, Phi = random_fattening(rng, K)
            payload = {"Phi": Phi, "upstairs": random_action(rng, middle), "downstairs": random_action(rng, K)}
            instances.append(SuiteInstance(f"descent_{k}", payload))
        return instances

    def verify_instance(self, instance: SuiteInstance) -> Dict[str, Any]:
        Phi = instance.payload["Phi"]
        X = instance.payload["upstairs"]
        Y = instance.payload["downstairs"]
        descended = descend_dofib(Phi, action_to_dofib(X))
        back = find_action_iso(X, pullback_sheaf(Phi, descended.action))
        again = descend_dofib(Phi, action_to_dofib(pullback_sheaf(Phi, Y)))
        forth = find_action_iso(again.action, Y)
        return {
            "pullback_of_descent": score(back is not None),
            "descent_of_pullback": score(forth is not None),
            "witness": {
                "pullback_of_descent": len(X.elements),
                "descent_of_pullback": [len(again.action.elements), len(Y.elements)],
            },
        }


class TwoCellsSuite(VerificationSuite):
    """A raw 2-cell has exactly one representative on the pullback of the left legs."""

    name = "twocells"
    attempts = 20

    def setup_instances(self) -> List[SuiteInstance]:
        rng = np.random.default_rng(self.settings.seed)
        instances = []
        for k in range(self.settings.two_cell_instances):
            datum = None
            for _ in range(self.attempts):
                datum = random_two_cell_datum(rng, int(rng.integers(1, 3)))
                if datum is not None:
                    break
            instances.append(SuiteInstance(f"twocell_{k}", {"datum": datum}))
        return instances

    def verify_instance(self, instance: SuiteInstance) -> Dict[str, Any]:
        datum = instance.payload["datum"]
        if datum is None:
            return {"datum_found": 0.0}
        canonical = two_cell_canonical(datum)
        sigma, tau = datum.sigma, datum.tau
        candidates = [
            a
            for a in enumerate_transformations(canonical.source, canonical.target)
            if all(a(sigma.obj(y)) == tau(y) for y in sigma.source.objects)
        ]
        return {
            "datum_found": 1.0,
            "unique": score(len(candidates) == 1),
            "canonical": score(candidates == [canonical]),
            "witness": {"unique": len(candidates)},
        }
