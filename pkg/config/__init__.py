"""
Configuration module for locgen.
"""

from .toolkit_config import ToolkitConfig, get_config, reset_config

__all__ = ["ToolkitConfig", "get_config", "reset_config"]
