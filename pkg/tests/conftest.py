import pytest

from pathsign import construct, underlying


@pytest.fixture(scope="session")
def level2():
    return construct(2)


@pytest.fixture(scope="session")
def level3():
    return construct(3)


@pytest.fixture(scope="session")
def level4():
    return construct(4)


@pytest.fixture(scope="session")
def g3(level3):
    return underlying(level3.derived)


@pytest.fixture(scope="session")
def g4(level4):
    return underlying(level4.derived)
