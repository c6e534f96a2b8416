"""Shared test helpers."""

import numpy as np
import pytest

from permupower import BiPerm, random_perm


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_biperms(seed: int, d: int, count: int) -> list[BiPerm]:
    gen = np.random.default_rng(seed)
    return [random_perm(d, gen) for _ in range(count)]
