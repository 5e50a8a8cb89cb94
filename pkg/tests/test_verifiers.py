"""
Tests for configuration, verification reports and the seeded suites.
"""

import json
import sys
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from config import ToolkitConfig  # noqa: E402
from reports import CheckResult, VerificationReport  # noqa: E402
from utils.errors import BundleFormatError  # noqa: E402
from verifiers import SUITES, SuiteSettings, get_suite, run_suites, suite_names  # noqa: E402

CORPUS = project_root / "corpus"


@pytest.fixture
def small_settings():
    """Settings that keep every suite to a handful of instances."""
    return SuiteSettings(
        corpus=CORPUS,
        theories=("objects",),
        zeta_theories=("objects",),
        parameters=1,
        seed=3,
        random_instances=3,
        span_instances=2,
        two_cell_instances=2,
        max_objects=2,
        zeta_categories=("terminal",),
        product_pairs=(("objects", "objects"),),
    )


class TestConfiguration:
    """Test the configuration layer."""

    def test_defaults(self, tmp_path):
        """Without a file the built-in defaults apply."""
        config = ToolkitConfig(str(tmp_path / "missing.json"))
        assert config.get("classifier.parameters") == 2
        assert config.get("presentations.entailment") == "points"
        assert config.get("verify.nothing", "fallback") == "fallback"

    def test_file_merges_sections(self, tmp_path):
        """A config file overrides single keys and keeps the rest of the section."""
        path = tmp_path / "locgen.json"
        path.write_text(json.dumps({"verify": {"seed": 9}}), encoding="utf-8")
        config = ToolkitConfig(str(path))
        assert config.get("verify.seed") == 9
        assert config.get("verify.span_instances") == 50

    def test_environment_overrides(self, tmp_path, monkeypatch):
        """LOCGEN_* variables win over files and defaults."""
        monkeypatch.setenv("LOCGEN_P", "3")
        monkeypatch.setenv("LOCGEN_ORIENTATION", "ps")
        config = ToolkitConfig(str(tmp_path / "missing.json"))
        assert config.get("classifier.parameters") == 3
        assert config.get("classifier.orientation") == "PS"

    def test_set_and_save(self, tmp_path):
        """Dotted keys can be set and written back."""
        path = tmp_path / "saved.json"
        config = ToolkitConfig(str(path))
        config.set("verify.seed", 42)
        config.save()
        assert ToolkitConfig(str(path)).get("verify.seed") == 42

    def test_suite_settings_from_config(self, tmp_path):
        """Suite settings read the config; None overrides are ignored."""
        path = tmp_path / "locgen.json"
        path.write_text(json.dumps({"verify": {"seed": 5, "zeta_categories": ["terminal"]}}), encoding="utf-8")
        settings = SuiteSettings.from_config(ToolkitConfig(str(path)), seed=None, parameters=1)
        assert settings.seed == 5
        assert settings.parameters == 1
        assert settings.zeta_categories == ("terminal",)


class TestReports:
    """Test verification reports."""

    def make_report(self) -> VerificationReport:
        report = VerificationReport(metadata={"seed": 0})
        report.add(CheckResult("descent", "d0", "descends", True))
        report.add(CheckResult("descent", "d1", "descends", False, {"element": ("x", 1)}))
        return report

    def test_scores(self):
        """The score averages the checks; the first failure is kept."""
        report = self.make_report()
        assert not report.passed
        assert report.final_score == 0.5
        assert report.first_failure().instance == "d1"
        assert report.summary_records() == [
            {"suite": "descent", "check": "descends", "passed": 1, "total": 2, "score": 0.5}
        ]

    def test_save_and_load(self, tmp_path):
        """A saved report loads back with the same results."""
        path = self.make_report().save(tmp_path / "report.json")
        loaded = VerificationReport.load(path)
        assert [r.passed for r in loaded.results] == [True, False]
        assert loaded.results[1].witness == {"element": ["x", 1]}

    def test_malformed(self, tmp_path):
        """A file without results is rejected."""
        path = tmp_path / "bad.json"
        path.write_text("{}", encoding="utf-8")
        with pytest.raises(BundleFormatError):
            VerificationReport.load(path)


class TestSuites:
    """Test the suite registry and small seeded runs."""

    def test_registry(self):
        """Every suite is registered under its own name."""
        assert suite_names()[0] == "all"
        assert set(suite_names()[1:]) == set(SUITES)
        for name, suite in SUITES.items():
            assert suite.name == name

    def test_unknown_suite(self, small_settings):
        """Unknown names list the available suites."""
        with pytest.raises(ValueError, match="Available"):
            get_suite("nonsense", small_settings)

    @pytest.mark.parametrize("name", ["presentations", "bijections", "structures", "descent", "zeta", "product"])
    def test_small_run_passes(self, small_settings, name):
        """Each suite passes on a small seeded run."""
        report = get_suite(name, small_settings).run()
        assert report.results
        assert report.passed, [r.to_dict() for r in report.failures()[:3]]

    def test_seeded_runs_repeat(self, small_settings):
        """The same seed gives the same results."""
        first = get_suite("descent", small_settings).run()
        second = get_suite("descent", small_settings).run()
        assert [r.to_dict() for r in first.results] == [r.to_dict() for r in second.results]

    def test_run_suites_metadata(self, small_settings):
        """A combined run records the suites and the seed."""
        report = run_suites("descent", small_settings)
        assert report.metadata == {"suites": ["descent"], "seed": 3}
