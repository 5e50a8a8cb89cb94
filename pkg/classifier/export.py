"""
Classifier bundles as a JSON directory tree.

    manifest.json              theory text, parameters, file index
    presentations/<name>.json  canonical presentation JSON
    homs/<name>.json           generator tables with source/target names

Loading re-validates every presentation and re-verifies every hom.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Union

from presentations import FrameHomSpec, Presentation, check_frame_hom
from presentations.serialization import canonical_dumps, from_json, hom_from_dict, hom_to_dict, to_canonical_json
from theory_dsl import Theory, parse_theory, pretty_print
from utils.errors import BundleFormatError, TheoryError

from .build import ClassifierBundle
from .params import ParameterSet

logger = logging.getLogger(__name__)

MANIFEST = "manifest.json"
FORMAT_VERSION = 1


def _name_of(pres: Presentation, named: Dict[str, Presentation]) -> str:
    for name, candidate in named.items():
        if candidate is pres:
            return name
    for name, candidate in named.items():
        if candidate.same_as(pres):
            return name
    raise BundleFormatError(f"presentation {pres.name or '?'} is not part of the bundle")


def export_bundle(bundle: ClassifierBundle, directory: Union[str, Path]) -> Path:
    root = Path(directory)
    (root / "presentations").mkdir(parents=True, exist_ok=True)
    (root / "homs").mkdir(parents=True, exist_ok=True)

    named = bundle.presentations()
    for name, pres in named.items():
        (root / "presentations" / f"{name}.json").write_text(to_canonical_json(pres) + "\n", encoding="utf-8")

    hom_index: List[Dict[str, str]] = []
    for name, spec in bundle.homs().items():
        source, target = _name_of(spec.source, named), _name_of(spec.target, named)
        data = hom_to_dict(spec, source, target)
        data["name"] = name
        (root / "homs" / f"{name}.json").write_text(canonical_dumps(data) + "\n", encoding="utf-8")
        hom_index.append({"name": name, "source": source, "target": target})

    manifest = {
        "format": FORMAT_VERSION,
        "theory": pretty_print(bundle.theory),
        "parameters": list(bundle.params.tokens),
        "orientation": bundle.params.orientation.value,
        "role": bundle.params.role,
        "presentations": sorted(named),
        "homs": hom_index,
    }
    (root / MANIFEST).write_text(json.dumps(manifest, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")
    logger.info(f"exported {len(named)} presentations and {len(hom_index)} homs to {root}")
    return root


@dataclass(frozen=True)
class LoadedBundle:
    theory: Theory
    params: ParameterSet
    presentations: Dict[str, Presentation]
    homs: Dict[str, FrameHomSpec]

    @property
    def all_verified(self) -> bool:
        return all(spec.verified for spec in self.homs.values())


def _read_json(path: Path):
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise BundleFormatError(f"missing file {path}") from None
    except json.JSONDecodeError as e:
        raise BundleFormatError(f"{path} is not valid JSON: {e}") from e


def load_bundle(directory: Union[str, Path], verify: bool = True) -> LoadedBundle:
    root = Path(directory)
    manifest = _read_json(root / MANIFEST)
    try:
        theory = parse_theory(manifest["theory"])
        params = ParameterSet(tuple(manifest["parameters"]), manifest["orientation"])
        names = list(manifest["presentations"])
        hom_index = list(manifest["homs"])
    except (KeyError, TypeError, ValueError, TheoryError) as e:
        raise BundleFormatError(f"malformed manifest: {e}") from e

    presentations: Dict[str, Presentation] = {}
    for name in names:
        path = root / "presentations" / f"{name}.json"
        if not path.exists():
            raise BundleFormatError(f"missing file {path}")
        presentations[name] = from_json(path.read_text(encoding="utf-8"), name)

    homs: Dict[str, FrameHomSpec] = {}
    for entry in hom_index:
        try:
            name, source, target = entry["name"], entry["source"], entry["target"]
            spec = hom_from_dict(_read_json(root / "homs" / f"{name}.json"), presentations[source], presentations[target])
        except (KeyError, TypeError) as e:
            raise BundleFormatError(f"bad hom entry {entry!r}: {e}") from e
        homs[name] = check_frame_hom(spec) if verify else spec

    failed = [name for name, spec in homs.items() if verify and not spec.verified]
    if failed:
        raise BundleFormatError(f"homs no longer verify after loading: {', '.join(failed)}")
    logger.info(f"loaded bundle from {root}: {len(presentations)} presentations, {len(homs)} homs")
    return LoadedBundle(theory, params, presentations, homs)
