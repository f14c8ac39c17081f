"""Shared pytest fixtures."""

from __future__ import annotations

from pathlib import Path
from typing import Callable

import numpy as np
import pytest

from advice_kit.names import BINARY, Alphabet, Name, eventually_periodic

FIXTURE_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def random_periodic(rng: np.random.Generator) -> Callable[..., Name]:
    """Factory of random eventually periodic names."""

    def make(alphabet: Alphabet = BINARY, max_prefix: int = 6, max_period: int = 4) -> Name:
        size = alphabet.size or 10
        prefix = rng.integers(0, size, int(rng.integers(0, max_prefix + 1))).tolist()
        period = rng.integers(0, size, int(rng.integers(1, max_period + 1))).tolist()
        return eventually_periodic(alphabet, prefix, period)

    return make


@pytest.fixture
def fixture_dir() -> Path:
    return FIXTURE_DIR
