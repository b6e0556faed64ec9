"""Shared fixtures: the five-patient example and random-instance helpers."""

from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from winmoments import ArmAssignment, OutcomeMatrix, summarize

DATA_DIR = Path(__file__).parent / "data"

# Five patients, two treated. Patients 1, 5, 2 form a directed cycle, so the
# matrix is deliberately non-transitive.
FIVE_ENTRIES = (
    (0, -1, 0, 0, 1),
    (1, 0, 1, 0, -1),
    (0, -1, 0, 1, 0),
    (0, 0, -1, 0, -1),
    (-1, 1, 0, 1, 0),
)
FIVE_ARMS = (1, 1, 0, 0, 0)

# Frozen expected values for the fixture, kept as exact rationals.
PERM_EXP = Fraction(9, 5)
PERM_COV = (
    (Fraction(19, 25), Fraction(-6, 25)),
    (Fraction(-6, 25), Fraction(14, 25)),
)
PERM_VAR_DIFF = Fraction(9, 5)
BOOT_EXP = (Fraction(2), Fraction(1))
BOOT_COV = (
    (Fraction(5, 3), Fraction(-1, 6)),
    (Fraction(-1, 6), Fraction(3, 2)),
)
BOOT_VAR_DIFF = Fraction(7, 2)
FS_SCORES = (0, 1, 0, -2, 1)
FS_VALUE = 1


@pytest.fixture(scope="session")
def u5():
    return OutcomeMatrix.from_entries(FIVE_ENTRIES)


@pytest.fixture(scope="session")
def arms5():
    return ArmAssignment(FIVE_ARMS)


@pytest.fixture(scope="session")
def summary5(u5, arms5):
    return summarize(u5, arms5)


def random_skew(rng: np.random.Generator, n: int) -> OutcomeMatrix:
    """Random skew matrix over {-1, 0, 1}, roughly one third zeros."""
    upper = np.triu(rng.integers(-1, 2, size=(n, n)), 1)
    return OutcomeMatrix.from_entries(upper - upper.T)


def random_arms(rng: np.random.Generator, n: int) -> ArmAssignment:
    """Random assignment with at least one patient in each arm."""
    while True:
        bits = rng.integers(0, 2, size=n)
        if 0 < bits.sum() < n:
            return ArmAssignment(bits)


def rel_err(got: float, want: float) -> float:
    if got == want:
        return 0.0
    return abs(got - want) / max(abs(want), 1e-300)


try:
    from hypothesis import settings

    settings.register_profile("suite", derandomize=True, max_examples=60)
    settings.load_profile("suite")
except ImportError:
    pass
