import pytest

from rcforms import (
    E8,
    E8_INDEX1_VECTOR,
    eisenstein_q,
    jacobi_theta,
    siegel_theta,
    standard_index_vector,
)
from rcforms.verify import FormSet

TRUNC = 8
SIEGEL_TRUNC = 3


@pytest.fixture(scope="session")
def forms() -> FormSet:
    """Shared acceptance-scale test forms (trunc 8, degree-2 trunc 3)."""
    return FormSet(trunc=TRUNC, siegel_trunc=SIEGEL_TRUNC)


@pytest.fixture(scope="session")
def theta4():
    """E8 theta at the pinned index-1 vector, small truncation for unit tests."""
    return jacobi_theta(E8, E8_INDEX1_VECTOR, 4)


@pytest.fixture(scope="session")
def theta4_index2():
    return jacobi_theta(E8, standard_index_vector(E8, 2), 4)


@pytest.fixture(scope="session")
def e4_theta4(theta4):
    return eisenstein_q(4, 4) * theta4


@pytest.fixture(scope="session")
def siegel2():
    return siegel_theta(E8, 2)
