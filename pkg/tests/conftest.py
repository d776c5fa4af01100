import pytest

from fracsum import numsys


@pytest.fixture(scope="session")
def systems():
    return numsys.example_systems()


@pytest.fixture(scope="session")
def base2(systems):
    return systems["base2"]


@pytest.fixture(scope="session")
def base10(systems):
    return systems["base10"]


@pytest.fixture(scope="session")
def base3(systems):
    return systems["base3_neg"]


@pytest.fixture(scope="session")
def lai_wang(systems):
    return systems["lai_wang"]


@pytest.fixture(scope="session")
def heighway(systems):
    return systems["heighway"]
