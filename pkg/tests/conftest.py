import pytest

from kmhecke import presets


@pytest.fixture(scope="session")
def sl3():
    return presets.load("sl3")


@pytest.fixture(scope="session")
def affine():
    return presets.load("affine-sl2")


@pytest.fixture(scope="session")
def rank2_even():
    return presets.load("rank2-even")


@pytest.fixture(scope="session")
def cases():
    """{n: (datum, tau)} for the seven stabilizer-pattern presets."""
    return {n: presets.load(f"case{n}") for n in range(1, 8)}
