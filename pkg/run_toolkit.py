#!/usr/bin/env python3
"""
locgen toolkit runner.

Parses a theory, generates its classifier presentations, lists and decodes
points, and runs the verification suites. See `--help` for the subcommands.
"""

import sys
from pathlib import Path

# Add the project root to the Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
