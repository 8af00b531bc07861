import pytest

from cayleyforge import system_m, system_n


@pytest.fixture(scope="session")
def sys_m():
    return system_m()


@pytest.fixture(scope="session")
def sys_n():
    return system_n()
