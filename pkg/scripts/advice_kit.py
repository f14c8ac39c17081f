"""
Run the ``advice-kit`` CLI from a checkout without installing it.

    uv run python scripts/advice_kit.py complexity --machine identity --kmax 8
"""

import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from advice_kit.cli import main

if __name__ == "__main__":
    sys.exit(main())
