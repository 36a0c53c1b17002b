import pytest

from bibdkit.designs import construct


@pytest.fixture(scope="session")
def design_731():
    return construct(7, 3, 1)


@pytest.fixture(scope="session")
def design_931():
    return construct(9, 3, 1)


@pytest.fixture(scope="session")
def design_632():
    return construct(6, 3, 2)


@pytest.fixture(scope="session")
def design_432():
    return construct(4, 3, 2)
