"""
Base class for the verification suites.

A suite prepares its instances, scores each one as a dict of checks worth
1.0 or 0.0, and collects the scores into a VerificationReport. An exception
inside one instance fails that instance only.
"""

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from classifier import ClassifierBundle, ParameterSet, build_classifier
from config import ToolkitConfig, get_config
from reports import CheckResult, VerificationReport
from theory_dsl import Theory, load_theory

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent


@dataclass(frozen=True)
class SuiteSettings:
    corpus: Path = PROJECT_ROOT / "corpus"
    theories: Tuple[str, ...] = ("objects", "pointed", "graphs_sym", "inhabited", "flagged", "two_sorted")
    zeta_theories: Tuple[str, ...] = ("objects", "pointed", "inhabited", "flagged")
    parameters: int = 2
    orientation: Optional[str] = None
    seed: int = 0
    random_instances: int = 100
    span_instances: int = 50
    two_cell_instances: int = 50
    max_objects: int = 4
    zeta_categories: Tuple[str, ...] = ("terminal", "codiscrete2", "arrow")
    product_pairs: Tuple[Tuple[str, str], ...] = (("objects", "objects"), ("objects", "pointed"))

    @classmethod
    def from_config(cls, config: Optional[ToolkitConfig] = None, **overrides: Any) -> "SuiteSettings":
        config = config or get_config()
        corpus = Path(config.get("verify.corpus", "corpus"))
        if not corpus.is_absolute() and not corpus.exists():
            corpus = PROJECT_ROOT / corpus
        settings = cls(
            corpus=corpus,
            theories=tuple(config.get("verify.theories", cls.theories)),
            zeta_theories=tuple(config.get("verify.zeta_theories", cls.zeta_theories)),
            parameters=int(config.get("classifier.parameters", 2)),
            orientation=config.get("classifier.orientation"),
            seed=int(config.get("verify.seed", 0)),
            random_instances=int(config.get("verify.random_instances", 100)),
            span_instances=int(config.get("verify.span_instances", 50)),
            two_cell_instances=int(config.get("verify.two_cell_instances", 50)),
            max_objects=int(config.get("verify.max_objects", 4)),
            zeta_categories=tuple(config.get("verify.zeta_categories", cls.zeta_categories)),
            product_pairs=tuple(tuple(pair) for pair in config.get("verify.product_pairs", cls.product_pairs)),
        )
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(settings, **overrides)

    def theory_path(self, name: str) -> Path:
        return Path(self.corpus) / f"{name}.gth"


@lru_cache(maxsize=None)
def corpus_theory(path: str) -> Theory:
    return load_theory(path)


@lru_cache(maxsize=None)
def corpus_bundle(path: str, parameters: int, orientation: Optional[str] = None) -> ClassifierBundle:
    """Classifiers are shared between suites within one process."""
    theory = corpus_theory(path)
    return build_classifier(theory, ParameterSet.of_size(parameters, orientation or theory.orientation))


@dataclass
class SuiteInstance:
    name: str
    payload: Dict[str, Any] = field(default_factory=dict)


class VerificationSuite:
    """A base class for all verification suites."""

    name = "base"

    def __init__(self, settings: Optional[SuiteSettings] = None):
        self.settings = settings or SuiteSettings()
        self.instances = self.setup_instances()

    def setup_instances(self) -> List[SuiteInstance]:
        """Prepares the instances to check. Must be implemented by subclasses."""
        raise NotImplementedError

    def verify_instance(self, instance: SuiteInstance) -> Dict[str, Any]:
        """Scores one instance. Must be implemented by subclasses."""
        raise NotImplementedError

    def theory(self, name: str) -> Theory:
        return corpus_theory(str(self.settings.theory_path(name)))

    def bundle(self, name: str, parameters: Optional[int] = None) -> ClassifierBundle:
        p = self.settings.parameters if parameters is None else parameters
        return corpus_bundle(str(self.settings.theory_path(name)), p, self.settings.orientation)

    def run_instance(self, instance: SuiteInstance) -> Dict[str, Any]:
        try:
            return self.verify_instance(instance)
        except Exception as e:
            logger.warning(f"{self.name}/{instance.name} raised {type(e).__name__}: {e}")
            return {"completed": 0.0, "error": f"{type(e).__name__}: {e}"}

    def calculate_final_score(self, score_details: Dict[str, Any]) -> Dict[str, Any]:
        """Average of all checks that passed (1.0) or failed (0.0)."""
        scores = [v for v in score_details.values() if isinstance(v, (int, float)) and not isinstance(v, bool)]
        final_score = sum(scores) / len(scores) if scores else 0.0
        return {"final_score": final_score, "details": score_details}

    def results_for(self, instance: SuiteInstance, details: Dict[str, Any]) -> List[CheckResult]:
        witnesses = details.get("witness", {})
        results = []
        for check, value in details.items():
            if check in ("witness", "error") or not isinstance(value, (int, float)):
                continue
            witness = witnesses.get(check)
            if check == "completed":
                witness = details.get("error")
            results.append(CheckResult(self.name, instance.name, check, value >= 1.0, witness))
        return results

    def run(self) -> VerificationReport:
        report = VerificationReport(metadata={"suite": self.name, "seed": self.settings.seed})
        for instance in self.instances:
            details = self.run_instance(instance)
            logger.debug(f"{self.name}/{instance.name}: {self.calculate_final_score(details)['final_score']:.3f}")
            report.extend(self.results_for(instance, details))
        logger.info(f"suite {self.name}: {len(self.instances)} instances, score {report.final_score:.3f}")
        return report


def score(ok: bool) -> float:
    return 1.0 if ok else 0.0
