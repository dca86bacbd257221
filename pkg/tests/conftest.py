import pytest

from momentcat.hyperkit import PlusCategory
from momentcat.skeletons import delta, gamma, theta


@pytest.fixture(scope="session")
def G():
    return gamma()


@pytest.fixture(scope="session")
def D():
    return delta()


@pytest.fixture(scope="session")
def T2():
    return theta(2)


@pytest.fixture(scope="session")
def GP(G):
    return PlusCategory(G)


@pytest.fixture(scope="session")
def DP(D):
    return PlusCategory(D)
