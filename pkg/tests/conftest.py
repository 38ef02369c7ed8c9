import pytest

from pappus import default_seed, symmetric_seed


@pytest.fixture(scope="session")
def seed():
    return default_seed()


@pytest.fixture(scope="session")
def sym_seed():
    return symmetric_seed()
