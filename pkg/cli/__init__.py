"""
Command-line front end: classify, points, decode, verify, report.
"""

from .commands import COMMANDS, cmd_classify, cmd_decode, cmd_points, cmd_report, cmd_verify, layer_counts
from .config import RunConfig
from .main import build_parser, exit_code_for, main

__all__ = [
    "COMMANDS",
    "RunConfig",
    "build_parser",
    "cmd_classify",
    "cmd_decode",
    "cmd_points",
    "cmd_report",
    "cmd_verify",
    "exit_code_for",
    "layer_counts",
    "main",
]
