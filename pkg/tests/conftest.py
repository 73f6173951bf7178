import pytest

from cobinv.config import Config


@pytest.fixture(scope="session")
def cfg():
    return Config()


@pytest.fixture(scope="session")
def cfg10():
    return Config(D=10)
