"""Make the reference oracles importable as a plain module from any cwd."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
