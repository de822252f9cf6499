import numpy as np
import pytest

from eqhodge.complexes import builtin_complex
from eqhodge.fixtures import corpus, rp2_cover_fixture, cyclic_fixture


@pytest.fixture(scope="session")
def rp2_fixture():
    return rp2_cover_fixture()


@pytest.fixture(scope="session")
def rp2_cover(rp2_fixture):
    return rp2_fixture.cover


@pytest.fixture(scope="session")
def torus_z3_cover():
    return cyclic_fixture("torus", 3).cover


@pytest.fixture(scope="session")
def full_corpus():
    return corpus()


@pytest.fixture(scope="session")
def torus():
    return builtin_complex("torus")


@pytest.fixture(scope="session")
def klein_bottle():
    return builtin_complex("klein_bottle")
