"""
Subcommand handlers. Each takes a RunConfig, writes its result to stdout
and returns an exit code; exceptions are left to the caller to map.
"""

import logging
from dataclasses import replace
from typing import Dict, List

import pandas as pd

from classifier import ClassifierBundle, ParameterSet, build_classifier, export_bundle, load_bundle
from config import get_config
from model_oracle import ModelHom, decode_point, layer_presentation
from presentations import count_points, enumerate_points
from presentations.serialization import canonical_dumps
from reports import CheckResult, VerificationReport
from theory_dsl import Theory, load_theory
from utils.errors import ExitCode
from verifiers import SuiteSettings, run_suites

from .config import RunConfig

logger = logging.getLogger(__name__)


def _plural(n: int, word: str) -> str:
    return f"{n} {word}" if n == 1 else f"{n} {word}s"


def _theory(cfg: RunConfig) -> Theory:
    if cfg.theory is None:
        raise ValueError(f"'{cfg.command}' needs a theory file")
    return load_theory(cfg.theory)


def _bundle(cfg: RunConfig) -> ClassifierBundle:
    theory = _theory(cfg)
    params = ParameterSet.of_size(cfg.parameters, cfg.orientation or theory.orientation)
    return build_classifier(theory, params)


def _emit(cfg: RunConfig, data, text: str) -> None:
    print(canonical_dumps(data) if cfg.json else text)


def layer_counts(bundle: ClassifierBundle) -> List[Dict[str, object]]:
    layers = {"g0": bundle.g0, "g1": bundle.g1, "g1_core": bundle.g1_core}
    layers.update({f"E_{sort}": bundle.sort_bundle(sort).total for sort in bundle.theory.sorts})
    return [
        {"layer": name, "generators": len(pres), "relations": len(pres.relations), "points": count_points(pres)}
        for name, pres in layers.items()
    ]


def cmd_classify(cfg: RunConfig) -> int:
    bundle = _bundle(cfg)
    rows = layer_counts(bundle)
    directory = export_bundle(bundle, cfg.output_directory())
    lines = [
        f"{row['layer']}: {_plural(row['generators'], 'generator')}, {_plural(row['points'], 'point')}"
        for row in rows
    ]
    lines.append(f"bundle written to {directory}")
    _emit(cfg, {"theory": bundle.theory.name, "layers": rows, "bundle": str(directory)}, "\n".join(lines))
    return ExitCode.OK


def _describe(decoded) -> str:
    if isinstance(decoded, ModelHom):
        return f"[{decoded.source.describe()}] -> [{decoded.target.describe()}]: {decoded.describe()}"
    return decoded.describe()


def cmd_points(cfg: RunConfig) -> int:
    bundle = _bundle(cfg)
    points = enumerate_points(layer_presentation(bundle, cfg.layer))
    rows = [
        {"index": k, "mask": pt.mask, "model": _describe(decode_point(bundle, pt, cfg.layer))}
        for k, pt in enumerate(points)
    ]
    frame = pd.DataFrame(rows, columns=["index", "mask", "model"])
    _emit(cfg, {"layer": cfg.layer, "points": rows}, frame.to_string(index=False))
    return ExitCode.OK


def cmd_decode(cfg: RunConfig) -> int:
    bundle = _bundle(cfg)
    points = enumerate_points(layer_presentation(bundle, cfg.layer))
    if not 0 <= cfg.point < len(points):
        raise ValueError(f"--point {cfg.point} out of range: {cfg.layer} has {_plural(len(points), 'point')}")
    pt = points[cfg.point]
    decoded = decode_point(bundle, pt, cfg.layer)
    data = {"layer": cfg.layer, "index": cfg.point, "mask": pt.mask, "decoded": decoded.to_dict()}
    _emit(cfg, data, _describe(decoded))
    return ExitCode.OK


def _bundle_report(cfg: RunConfig) -> VerificationReport:
    loaded = load_bundle(cfg.bundle)
    report = VerificationReport(metadata={"bundle": str(cfg.bundle), "theory": loaded.theory.name})
    for name, spec in sorted(loaded.homs.items()):
        witness = None if spec.failure is None else str(spec.failure.relation)
        report.add(CheckResult("bundle", name, "verified", spec.verified, witness))
    return report


def _suite_settings(cfg: RunConfig) -> SuiteSettings:
    settings = SuiteSettings.from_config(
        get_config(), parameters=cfg.parameters, orientation=cfg.orientation, seed=cfg.seed
    )
    if cfg.theory is not None:
        stem = cfg.theory.stem
        settings = replace(
            settings,
            corpus=cfg.theory.resolve().parent,
            theories=(stem,),
            zeta_theories=(stem,),
            product_pairs=((stem, stem),),
        )
    return settings


def cmd_verify(cfg: RunConfig) -> int:
    report = _bundle_report(cfg) if cfg.bundle else run_suites(cfg.suite, _suite_settings(cfg))
    if cfg.out is not None:
        report.save(cfg.out / "report.json" if cfg.out.suffix != ".json" else cfg.out)
    if cfg.json:
        print(report.to_json())
    else:
        print(report.summary().to_string(index=False))
        print(f"final score: {report.final_score:.3f}")
    failure = report.first_failure()
    if failure is not None:
        if not cfg.json:
            print(f"first failure: {failure.suite}/{failure.instance}/{failure.check}")
            print(canonical_dumps(failure.to_dict()))
        return ExitCode.CHECK_FAILED
    return ExitCode.OK


def cmd_report(cfg: RunConfig) -> int:
    if cfg.report is None:
        raise ValueError("'report' needs a report file")
    report = VerificationReport.load(cfg.report)
    if cfg.json:
        print(canonical_dumps({"summary": report.summary_records(), "final_score": report.final_score}))
    else:
        print(report.summary().to_string(index=False))
        print(f"final score: {report.final_score:.3f}")
    return ExitCode.OK if report.passed else ExitCode.CHECK_FAILED


COMMANDS = {
    "classify": cmd_classify,
    "points": cmd_points,
    "decode": cmd_decode,
    "verify": cmd_verify,
    "report": cmd_report,
}
