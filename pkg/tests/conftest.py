"""
Shared fixtures: constant and seeded random lattices and the nets built on them.
"""

import math

import pytest

from lawson_forge.core.lax import propagate
from lawson_forge.core.models import CauchyData
from lawson_forge.surfaces.immersion import immerse_r3_lattice, immerse_s3


@pytest.fixture(scope="session")
def constant_lattice():
    """a = u = b = v = 1 everywhere"""
    return propagate(CauchyData.constant(3, 3))


@pytest.fixture(scope="session")
def random_lattice():
    return propagate(CauchyData.random(5, 4, seed=11, a_abs_max=0.4, u_range=(0.85, 1.2), v_range=(0.85, 1.2)))


@pytest.fixture(scope="session")
def r3_net(random_lattice):
    return immerse_r3_lattice(random_lattice)


@pytest.fixture(scope="session")
def minimal_net(random_lattice):
    return immerse_s3(random_lattice, math.pi / 4)


@pytest.fixture(scope="session")
def cmc_net(random_lattice):
    return immerse_s3(random_lattice, math.pi / 6)
