"""Test configuration for ensuring source modules are importable."""

from __future__ import annotations

import sys
from pathlib import Path

from hypothesis import settings

PROJECT_ROOT = Path(__file__).resolve().parents[1]
SRC_PATH = PROJECT_ROOT / "src"
if str(SRC_PATH) not in sys.path:
    sys.path.insert(0, str(SRC_PATH))

settings.register_profile("hilbert-bn", max_examples=60, deadline=None)
settings.load_profile("hilbert-bn")


def pytest_configure(config) -> None:
    config.addinivalue_line("markers", "slow: long exhaustive sweeps")
