"""
Point counts of small presentations: Sierpiński space, canonical
presentations of finite sets, expanded presentations, the forcing locale,
and agreement of entailment with an independent sympy oracle.
"""

import itertools
import logging
import string
from typing import Any, Dict, List, Tuple

import numpy as np

from forcing import (
    basis_open_check,
    decode_partial_surjection,
    enumerate_partial_surjections,
    gen_forcing_presentation,
)
from presentations import (
    Generator,
    Presentation,
    Sequent,
    Span,
    canonical_presentation,
    count_points,
    entails,
    enumerate_points,
    expand_presentation,
    expansion_point_map,
    free_presentation,
)
from presentations.sympy_bridge import entails_sympy
from utils.errors import ForcingError

from .base import SuiteInstance, VerificationSuite, score

logger = logging.getLogger(__name__)


def random_presentation(rng: np.random.Generator, n_generators: int, n_relations: int) -> Presentation:
    ids = [f"g{k}" for k in range(n_generators)]

    def subset(max_size: int) -> List[str]:
        size = int(rng.integers(0, max_size + 1))
        return sorted(rng.choice(ids, size=min(size, len(ids)), replace=False).tolist()) if ids else []

    relations = []
    for _ in range(n_relations):
        rhs = [subset(2) for _ in range(int(rng.integers(0, 3)))]
        relations.append(Sequent.of(subset(2), rhs, "random"))
    return Presentation(tuple(Generator.make(g) for g in ids), tuple(relations), name="random")


def random_span(rng: np.random.Generator, base: List[str], max_outer: int, prefix: str) -> Span:
    """inner ↠ base, then inner ⊆ outer with |outer| ≤ max_outer."""
    q: Dict[str, str] = {}
    inner: List[str] = []
    for x in base:
        inner.append(f"{prefix}{len(inner)}")
        q[inner[-1]] = x
    while base and len(inner) < max_outer and rng.random() < 0.5:
        inner.append(f"{prefix}{len(inner)}")
        q[inner[-1]] = base[int(rng.integers(len(base)))]
    outer = list(inner)
    while len(outer) < max_outer and rng.random() < 0.5:
        outer.append(f"{prefix}{len(outer)}")
    rng.shuffle(outer)
    return Span(tuple(inner), tuple(outer), q)


class PresentationsSuite(VerificationSuite):
    name = "presentations"

    def setup_instances(self) -> List[SuiteInstance]:
        instances = [SuiteInstance("sierpinski", {"kind": "sierpinski"})]
        instances += [SuiteInstance(f"canonical_{n}", {"kind": "canonical", "size": n}) for n in range(5)]
        rng = np.random.default_rng(self.settings.seed)
        for k in range(self.settings.span_instances):
            n = int(rng.integers(1, 4))
            pres = random_presentation(rng, n, int(rng.integers(0, 4)))
            gen_span = random_span(rng, list(pres.ids), 6, "h")
            rel_span = random_span(rng, [str(i) for i in range(len(pres.relations))], 4, "r")
            payload = {"kind": "expansion", "pres": pres, "gens": gen_span, "rels": rel_span}
            instances.append(SuiteInstance(f"expansion_{k}", payload))
        for m, x in itertools.product(range(5), repeat=2):
            instances.append(SuiteInstance(f"forcing_{m}_{x}", {"kind": "forcing", "source": m, "target": x}))
        for k in range(self.settings.span_instances):
            pres = random_presentation(rng, int(rng.integers(1, 5)), int(rng.integers(0, 5)))
            query = random_presentation(rng, len(pres), 1)
            instances.append(SuiteInstance(f"oracle_{k}", {"kind": "oracle", "pres": pres, "query": query}))
        return instances

    def verify_instance(self, instance: SuiteInstance) -> Dict[str, Any]:
        return getattr(self, f"_check_{instance.payload['kind']}")(instance.payload)

    def _check_sierpinski(self, payload) -> Dict[str, Any]:
        points = enumerate_points(free_presentation(["g"], "sierpinski"))
        return {"two_points": score(len(points) == 2), "witness": {"two_points": len(points)}}

    def _check_canonical(self, payload) -> Dict[str, Any]:
        elements = list(string.ascii_lowercase[: payload["size"]])
        points = enumerate_points(canonical_presentation(elements))
        singletons = sorted(tuple(sorted(pt.trueset)) for pt in points)
        expected = sorted((f"eq:{x}",) for x in elements)
        return {
            "point_count": score(len(points) == len(elements)),
            "singletons": score(singletons == expected),
            "witness": {"point_count": len(points)},
        }

    def _check_expansion(self, payload) -> Dict[str, Any]:
        pres, gens, rels = payload["pres"], payload["gens"], payload["rels"]
        expanded = expand_presentation(pres, gens, rels)
        before = enumerate_points(pres)
        after = {pt.trueset for pt in enumerate_points(expanded)}
        images = {expansion_point_map(pres, expanded, gens, pt).trueset for pt in before}
        return {
            "point_count": score(len(before) == len(after)),
            "bijection": score(images == after and len(images) == len(before)),
            "witness": {"point_count": [len(before), len(after)]},
        }

    def _check_forcing(self, payload) -> Dict[str, Any]:
        source = tuple(range(payload["source"]))
        target = tuple(string.ascii_lowercase[: payload["target"]])
        L = gen_forcing_presentation(source, target)
        decoded = [decode_partial_surjection(L, pt) for pt in enumerate_points(L.presentation)]
        expected = enumerate_partial_surjections(source, target)
        as_key = lambda graphs: sorted(tuple(sorted(g.items())) for g in graphs)
        meets_ok = True
        if len(source) <= 3 and len(target) <= 3:
            gens = [L.generator(n, x) for n, x in L.pairs()]
            try:
                for size in range(4):
                    for meet in itertools.combinations(gens, size):
                        basis_open_check(L, frozenset(meet))
            except ForcingError as e:
                logger.debug(f"forcing {len(source)}→{len(target)}: {e}")
                meets_ok = False
        return {
            "points_are_partial_surjections": score(as_key(decoded) == as_key(expected)),
            "basis_opens": score(meets_ok),
            "witness": {"points_are_partial_surjections": [len(decoded), len(expected)]},
        }

    def _check_oracle(self, payload) -> Dict[str, Any]:
        pres: Presentation = payload["pres"]
        queries: Tuple[Sequent, ...] = payload["query"].relations
        agree = all(entails(pres, q) == entails_sympy(pres, q) for q in queries)
        counted = count_points(pres) == len(enumerate_points(pres))
        return {"sympy_agreement": score(agree), "count_points": score(counted)}
