"""
Verification suites for the toolkit.

Each suite prepares seeded instances, checks them and returns a
VerificationReport.
"""

import logging
from typing import Dict, List, Optional, Type

from reports import VerificationReport

from .base import SuiteInstance, SuiteSettings, VerificationSuite, corpus_bundle, corpus_theory
from .categorical_suites import BaseChangeSuite, DescentSuite, TwoCellsSuite, probe_formulas
from .classifier_suites import BijectionsSuite, SoundnessSuite, StructuresSuite
from .presentation_suite import PresentationsSuite, random_presentation, random_span
from .zeta_suite import ProductSuite, ZetaSuite

logger = logging.getLogger(__name__)

SUITES: Dict[str, Type[VerificationSuite]] = {
    suite.name: suite
    for suite in (
        PresentationsSuite,
        BijectionsSuite,
        StructuresSuite,
        SoundnessSuite,
        BaseChangeSuite,
        DescentSuite,
        TwoCellsSuite,
        ZetaSuite,
        ProductSuite,
    )
}


def suite_names() -> List[str]:
    return ["all"] + list(SUITES)


def get_suite(name: str, settings: Optional[SuiteSettings] = None) -> VerificationSuite:
    """Instantiate a suite by name."""
    if name not in SUITES:
        raise ValueError(f"Unknown suite '{name}'. Available: {', '.join(suite_names())}")
    return SUITES[name](settings)


def run_suites(name: str = "all", settings: Optional[SuiteSettings] = None) -> VerificationReport:
    """Run one suite, or every suite in registry order for "all"."""
    names = list(SUITES) if name == "all" else [name]
    report = VerificationReport(metadata={"suites": names, "seed": (settings or SuiteSettings()).seed})
    for suite_name in names:
        logger.info(f"running suite {suite_name}")
        report.merge(get_suite(suite_name, settings).run())
    return report


__all__ = [
    "SUITES",
    "BaseChangeSuite",
    "BijectionsSuite",
    "DescentSuite",
    "PresentationsSuite",
    "ProductSuite",
    "SoundnessSuite",
    "StructuresSuite",
    "SuiteInstance",
    "SuiteSettings",
    "TwoCellsSuite",
    "VerificationSuite",
    "ZetaSuite",
    "corpus_bundle",
    "corpus_theory",
    "get_suite",
    "probe_formulas",
    "random_presentation",
    "random_span",
    "run_suites",
    "suite_names",
]
