import random

import pytest
from hypothesis import settings

from bisector_lab.distcount import PlaneSet
from bisector_lab.field import make_modulus
from bisector_lab.sumprod import ResidueSet

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_plane_set(rng: random.Random, p: int, n: int) -> PlaneSet:
    m = make_modulus(p)
    return PlaneSet.from_points([(rng.randrange(p), rng.randrange(p)) for _ in range(n)], m)


def random_residue_set(rng: random.Random, p: int, n: int) -> ResidueSet:
    m = make_modulus(p)
    return ResidueSet.from_values([rng.randrange(p) for _ in range(n)], m)


@pytest.fixture
def m7():
    return make_modulus(7)


@pytest.fixture
def two_points(m7):
    return PlaneSet.from_points([(0, 0), (1, 0)], m7)


@pytest.fixture
def unit_square(m7):
    return PlaneSet.from_points([(0, 0), (1, 0), (1, 1), (0, 1)], m7)
