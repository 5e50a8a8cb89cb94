"""
Run configuration assembled from command-line flags, with ToolkitConfig
supplying every value a flag leaves unset.
"""

import argparse
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from config import ToolkitConfig, get_config


@dataclass(frozen=True)
class RunConfig:
    command: str
    theory: Optional[Path] = None
    parameters: int = 2
    orientation: Optional[str] = None
    layer: str = "objects"
    point: int = 0
    suite: str = "all"
    seed: int = 0
    json: bool = False
    out: Optional[Path] = None
    bundle: Optional[Path] = None
    report: Optional[Path] = None
    log_level: str = "INFO"

    def __post_init__(self):
        if self.parameters < 0:
            raise ValueError("--p must be non-negative")
        if self.orientation is not None and self.orientation.upper() not in ("LH", "PS"):
            raise ValueError(f"unknown orientation '{self.orientation}'. Available: lh, ps")

    @classmethod
    def from_args(cls, args: argparse.Namespace, config: Optional[ToolkitConfig] = None) -> "RunConfig":
        config = config or get_config()

        def flag(name: str, default=None):
            value = getattr(args, name, None)
            return default if value is None else value

        theory = flag("theory")
        out = flag("out")
        bundle = flag("bundle")
        report = flag("report")
        orientation = flag("orientation")
        return cls(
            command=args.command,
            theory=Path(theory) if theory else None,
            parameters=int(flag("p", config.get("classifier.parameters", 2))),
            orientation=orientation.upper() if orientation else None,
            layer=flag("layer", "objects"),
            point=int(flag("point", 0)),
            suite=flag("suite", "all"),
            seed=int(flag("seed", config.get("verify.seed", 0))),
            json=bool(flag("json", False)),
            out=Path(out) if out else None,
            bundle=Path(bundle) if bundle else None,
            report=Path(report) if report else None,
            log_level=str(config.get("logging.level", "INFO")),
        )

    def output_directory(self, config: Optional[ToolkitConfig] = None) -> Path:
        if self.out is not None:
            return self.out
        config = config or get_config()
        name = self.theory.stem if self.theory else "bundle"
        return Path(config.get("output.directory", "out")) / name
