import numpy as np
import pytest

from minlag.inputs import BUILTINS, builtin, load_input


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(scope="session")
def datasets():
    return {name: load_input(builtin(name)).data for name in BUILTINS}


@pytest.fixture(scope="session")
def catenoid(datasets):
    return datasets["catenoid"]


@pytest.fixture(scope="session")
def enneper(datasets):
    return datasets["enneper_type"]


@pytest.fixture(scope="session")
def surjective(datasets):
    return datasets["surjective"]


def random_poly_coeffs(rng, deg):
    return rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
