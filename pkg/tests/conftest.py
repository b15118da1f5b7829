import numpy as np
import pytest

from schattenframes.campaigns import random_hermitian, random_operator, random_psd


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def seeded_operators(dim, count, seed=0):
    return [random_operator(dim, seed + i) for i in range(count)]


def seeded_hermitians(dim, count, seed=0):
    return [random_hermitian(dim, seed + i) for i in range(count)]


def seeded_psds(dim, count, seed=0):
    return [random_psd(dim, seed + i) for i in range(count)]
