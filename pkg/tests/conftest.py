import pytest
from hypothesis import settings

from psalgebroid import config
from psalgebroid.fixtures import load_algebra, load_complex

# every piecewise form built during tests re-validates face compatibility
config.LIMITS.check_compatibility = True

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def circle():
    return load_complex("circle")


@pytest.fixture(scope="session")
def sphere():
    return load_complex("sphere")


@pytest.fixture(scope="session")
def torus():
    return load_complex("torus")


@pytest.fixture(scope="session")
def disk():
    return load_complex("solid_simplex")


@pytest.fixture(scope="session")
def sl2():
    return load_algebra("sl2")
