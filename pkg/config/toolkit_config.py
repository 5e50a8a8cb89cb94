"""
Configuration system for classifier generation and the verification suites.
"""

import copy
import json
import logging
import os
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)


class ToolkitConfig:
    """Configuration manager for generation, entailment and verification defaults."""

    def __init__(self, config_file: Optional[str] = None):
        """
        Initialize configuration.

        Args:
            config_file: Path to a JSON configuration file
        """
        self.config_file = config_file or os.getenv("LOCGEN_CONFIG", "locgen_config.json")
        self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from defaults, file and environment."""
        config = {
            "classifier": self._get_default_classifier_config(),
            "presentations": self._get_default_presentation_config(),
            "verify": self._get_default_verify_config(),
            "output": {"directory": "out"},
            "logging": {"level": "INFO"},
        }

        if os.path.exists(self.config_file):
            try:
                with open(self.config_file, "r", encoding="utf-8") as f:
                    file_config = json.load(f)
                for section, values in file_config.items():
                    if isinstance(values, dict) and isinstance(config.get(section), dict):
                        config[section].update(values)
                    else:
                        config[section] = values
            except Exception as e:
                logger.warning(f"Could not load config file {self.config_file}: {e}")

        return self._apply_env_overrides(config)

    def _get_default_classifier_config(self) -> Dict[str, Any]:
        return {"parameters": 2, "orientation": "LH"}

    def _get_default_presentation_config(self) -> Dict[str, Any]:
        return {"entailment": "points", "saturation_cap": 1_000_000}

    def _get_default_verify_config(self) -> Dict[str, Any]:
        """Sizes of the seeded suites; defaults finish well under a minute each."""
        return {
            "seed": 0,
            "random_instances": 100,
            "span_instances": 50,
            "two_cell_instances": 50,
            "max_objects": 4,
            "zeta_categories": ["terminal", "codiscrete2", "arrow"],
            "corpus": "corpus",
            "theories": ["objects", "pointed", "graphs_sym", "inhabited", "flagged", "two_sorted"],
            "zeta_theories": ["objects", "pointed", "inhabited", "flagged"],
            "product_pairs": [["objects", "objects"], ["objects", "pointed"]],
        }

    def _apply_env_overrides(self, config: Dict[str, Any]) -> Dict[str, Any]:
        """Apply environment variable overrides."""
        if os.getenv("LOCGEN_P"):
            config["classifier"]["parameters"] = int(os.environ["LOCGEN_P"])
        if os.getenv("LOCGEN_ORIENTATION"):
            config["classifier"]["orientation"] = os.environ["LOCGEN_ORIENTATION"].upper()
        if os.getenv("LOCGEN_SEED"):
            config["verify"]["seed"] = int(os.environ["LOCGEN_SEED"])
        if os.getenv("LOCGEN_ENTAILMENT"):
            config["presentations"]["entailment"] = os.environ["LOCGEN_ENTAILMENT"]
        if os.getenv("LOCGEN_LOG_LEVEL"):
            config["logging"]["level"] = os.environ["LOCGEN_LOG_LEVEL"].upper()
        return config

    def save(self) -> None:
        """Save configuration to file."""
        try:
            with open(self.config_file, "w", encoding="utf-8") as f:
                json.dump(self.config, f, indent=2, sort_keys=True)
        except Exception as e:
            logger.warning(f"Could not save config file {self.config_file}: {e}")

    def set(self, key: str, value: Any) -> None:
        """
        Set a configuration value using dot notation.

        Args:
            key: Configuration key (e.g., "verify.seed")
            value: Configuration value
        """
        keys = key.split(".")
        config = self.config
        for k in keys[:-1]:
            config = config.setdefault(k, {})
        config[keys[-1]] = value

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a configuration value using dot notation.

        Args:
            key: Configuration key (e.g., "presentations.saturation_cap")
            default: Default value if not found
        """
        value = self.config
        for k in key.split("."):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def as_dict(self) -> Dict[str, Any]:
        return copy.deepcopy(self.config)


# Global configuration instance
_global_config: Optional[ToolkitConfig] = None


def get_config(config_file: Optional[str] = None) -> ToolkitConfig:
    """
    Get the global configuration instance.

    Passing a config file replaces any previously loaded global instance.
    """
    global _global_config
    if _global_config is None or config_file is not None:
        _global_config = ToolkitConfig(config_file)
    return _global_config


def reset_config() -> None:
    """Drop the global instance so the next get_config() reloads."""
    global _global_config
    _global_config = None
