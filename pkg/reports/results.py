"""
Verification results: one CheckResult per (suite, instance, check), collected
into a VerificationReport with a score, canonical JSON and pandas summaries.
"""

import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

import pandas as pd

from presentations.serialization import canonical_dumps
from utils.errors import BundleFormatError

logger = logging.getLogger(__name__)


def _jsonable(value: Any) -> Any:
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in value]
        return sorted(items, key=repr) if isinstance(value, (set, frozenset)) else items
    if hasattr(value, "to_dict"):
        return _jsonable(value.to_dict())
    return repr(value)


@dataclass
class CheckResult:
    """Data class for one scored check."""

    suite: str
    instance: str
    check: str
    passed: bool
    witness: Any = None

    @property
    def score(self) -> float:
        return 1.0 if self.passed else 0.0

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["witness"] = _jsonable(self.witness)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CheckResult":
        return cls(data["suite"], data["instance"], data["check"], bool(data["passed"]), data.get("witness"))


@dataclass
class VerificationReport:
    results: List[CheckResult] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def add(self, result: CheckResult) -> None:
        self.results.append(result)

    def extend(self, results: Iterable[CheckResult]) -> None:
        self.results.extend(results)

    def merge(self, other: "VerificationReport") -> None:
        self.results.extend(other.results)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def final_score(self) -> float:
        """Average of all checks, passed (1.0) or failed (0.0)."""
        if not self.results:
            return 0.0
        return sum(r.score for r in self.results) / len(self.results)

    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def first_failure(self) -> Optional[CheckResult]:
        return next((r for r in self.results if not r.passed), None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "metadata": _jsonable(self.metadata),
            "final_score": self.final_score,
            "passed": self.passed,
            "results": [r.to_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return canonical_dumps(self.to_dict())

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json() + "\n", encoding="utf-8")
        logger.info(f"report written to {path}")
        return path

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationReport":
        try:
            results = [CheckResult.from_dict(row) for row in data["results"]]
        except (KeyError, TypeError) as e:
            raise BundleFormatError(f"malformed report: {e}") from e
        return cls(results, dict(data.get("metadata", {})))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "VerificationReport":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise BundleFormatError(f"cannot read report {path}: {e}") from e
        return cls.from_dict(data)

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [{"suite": r.suite, "instance": r.instance, "check": r.check, "passed": r.passed} for r in self.results],
            columns=["suite", "instance", "check", "passed"],
        )

    def summary(self) -> pd.DataFrame:
        """Pass counts and scores per suite and check."""
        df = self.frame()
        if df.empty:
            return pd.DataFrame(columns=["suite", "check", "passed", "total", "score"])
        grouped = df.groupby(["suite", "check"], sort=True)["passed"].agg(["sum", "count"]).reset_index()
        grouped = grouped.rename(columns={"sum": "passed", "count": "total"})
        grouped["passed"] = grouped["passed"].astype(int)
        grouped["score"] = grouped["passed"] / grouped["total"]
        return grouped

    def suite_scores(self) -> Dict[str, float]:
        df = self.frame()
        if df.empty:
            return {}
        return {suite: float(score) for suite, score in df.groupby("suite", sort=True)["passed"].mean().items()}

    def summary_records(self) -> List[Dict[str, Any]]:
        """The summary rows as plain Python values, ready for JSON."""
        return [
            {
                "suite": str(row.suite),
                "check": str(row.check),
                "passed": int(row.passed),
                "total": int(row.total),
                "score": float(row.score),
            }
            for row in self.summary().itertuples(index=False)
        ]
