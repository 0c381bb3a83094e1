import random

import pytest

from taubeta.types import Tolerances


@pytest.fixture
def tight():
    return Tolerances(abs_tol=1e-12, rel_tol=1e-12)


@pytest.fixture
def standard():
    return Tolerances(abs_tol=1e-10, rel_tol=1e-10)


@pytest.fixture
def rng():
    return random.Random(20240817)


def rel_err(value, reference) -> float:
    return abs(value - reference) / max(abs(reference), 1e-300)
