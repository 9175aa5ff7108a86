"""Shared test helpers: reference implementations and ensemble utilities."""

from __future__ import annotations

from itertools import combinations
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import unitary_group

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


def enumerated_tuples(d: int, n: int) -> list[tuple[int, ...]]:
    """Brute-force reference ordering: itertools yields sorted n-subsets
    of range(d) in lexicographic order, independently of the package."""
    return list(combinations(range(d), n))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    return unitary_group.rvs(d, random_state=rng)
