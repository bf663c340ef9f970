import pytest

from gammaforms import generate_all


@pytest.fixture(scope="session")
def tables_60():
    return generate_all(61)


@pytest.fixture(scope="session")
def tables_300():
    return generate_all(301)
