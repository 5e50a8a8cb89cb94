"""
Tests for the command-line front end and its exit codes.
"""

import json
import sys
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from cli import RunConfig, build_parser, exit_code_for, main  # noqa: E402
from reports import CheckResult, VerificationReport  # noqa: E402
from utils.errors import BundleFormatError, ExitCode, TheoryParseError  # noqa: E402

CORPUS = project_root / "corpus"
OBJECTS = str(CORPUS / "objects.gth")


class TestParser:
    """Test argument parsing and run configuration."""

    def test_classify_flags(self):
        """Flags land in the run configuration; the orientation is upper-cased."""
        args = build_parser().parse_args(["classify", OBJECTS, "--p", "1", "--orientation", "ps"])
        cfg = RunConfig.from_args(args)
        assert cfg.command == "classify"
        assert cfg.parameters == 1
        assert cfg.orientation == "PS"
        assert cfg.theory == Path(OBJECTS)

    def test_output_directory(self, tmp_path):
        """--out wins; otherwise the bundle goes under the output directory by theory name."""
        assert RunConfig("classify", Path(OBJECTS), out=tmp_path).output_directory() == tmp_path
        assert RunConfig("classify", Path(OBJECTS)).output_directory().name == "objects"

    def test_negative_parameters(self):
        """A negative |P| is a usage error."""
        with pytest.raises(ValueError):
            RunConfig("classify", Path(OBJECTS), parameters=-1)

    def test_exit_codes(self):
        """Parse problems give 2, corrupt bundles 3."""
        assert exit_code_for(TheoryParseError("boom", 1, 1)) == ExitCode.PARSE_ERROR
        assert exit_code_for(ValueError("bad flag")) == ExitCode.PARSE_ERROR
        assert exit_code_for(BundleFormatError("bad file")) == ExitCode.GENERATION_ERROR
        assert exit_code_for(RuntimeError("boom")) == ExitCode.GENERATION_ERROR


class TestCommands:
    """Test the subcommands end to end."""

    def test_classify(self, tmp_path, capsys):
        """classify prints the layer counts and writes the bundle."""
        out = tmp_path / "bundle"
        assert main(["classify", OBJECTS, "--p", "2", "--out", str(out)]) == 0
        printed = capsys.readouterr().out
        assert "g0: 4 generators, 5 points" in printed
        assert "g1_core: " in printed and "12 points" in printed
        assert (out / "manifest.json").exists()

    def test_classify_json(self, tmp_path, capsys):
        """--json prints machine-readable counts."""
        assert main(["classify", OBJECTS, "--p", "1", "--json", "--out", str(tmp_path / "b")]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["layers"][0] == {"layer": "g0", "generators": 1, "relations": 2, "points": 2}

    def test_parse_error(self, capsys):
        """A malformed theory exits with 2."""
        assert main(["classify", str(CORPUS / "bad.gth"), "--p", "1"]) == ExitCode.PARSE_ERROR

    def test_points(self, capsys):
        """points lists one row per model."""
        assert main(["points", OBJECTS, "--p", "1"]) == 0
        printed = capsys.readouterr().out
        assert "empty model" in printed
        assert "X: {0}" in printed

    def test_decode(self, capsys):
        """decode reads one point."""
        assert main(["decode", OBJECTS, "--p", "2", "--layer", "objects", "--point", "0"]) == 0
        assert capsys.readouterr().out.strip() == "empty model"

    def test_decode_out_of_range(self):
        """A point index past the end is a usage error."""
        assert main(["decode", OBJECTS, "--p", "1", "--point", "99"]) == ExitCode.PARSE_ERROR

    def test_unknown_layer(self):
        """An unknown layer name is a usage error."""
        assert main(["points", OBJECTS, "--p", "1", "--layer", "E:Y"]) == ExitCode.PARSE_ERROR

    def test_verify_bundle(self, tmp_path, capsys):
        """An exported bundle re-verifies; a corrupted one exits with 3."""
        out = tmp_path / "bundle"
        assert main(["classify", OBJECTS, "--p", "1", "--out", str(out)]) == 0
        assert main(["verify", "--bundle", str(out)]) == 0
        (out / "manifest.json").write_text("not json", encoding="utf-8")
        assert main(["verify", "--bundle", str(out)]) == ExitCode.GENERATION_ERROR

    def test_verify_unknown_suite(self):
        """An unknown suite name is a usage error."""
        assert main(["verify", "--suite", "nonsense"]) == ExitCode.PARSE_ERROR

    def test_verify_theory(self, tmp_path, capsys):
        """verify on one theory file runs the chosen suite and writes the report."""
        code = main(["verify", OBJECTS, "--p", "1", "--suite", "structures", "--out", str(tmp_path)])
        assert code == 0
        report = VerificationReport.load(tmp_path / "report.json")
        assert report.passed
        assert "final score: 1.000" in capsys.readouterr().out

    def test_report(self, tmp_path, capsys):
        """report summarises a saved file and fails when a check failed."""
        good = VerificationReport(results=[CheckResult("zeta", "objects/terminal", "full_faithful", True)])
        bad = VerificationReport(results=[CheckResult("zeta", "objects/terminal", "full_faithful", False)])
        assert main(["report", str(good.save(tmp_path / "good.json"))]) == 0
        assert main(["report", str(bad.save(tmp_path / "bad.json"))]) == ExitCode.CHECK_FAILED
        assert main(["report", str(tmp_path / "missing.json")]) == ExitCode.GENERATION_ERROR
