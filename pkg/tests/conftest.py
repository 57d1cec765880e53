import pytest

from flagein.rootsys import root_system
from flagein.solver import solve_symmetric_ansatz

SMALL_GROUPS = ("A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2")


@pytest.fixture(scope="session")
def g2():
    return root_system("G2")


@pytest.fixture(scope="session")
def a2():
    return root_system("A2")


@pytest.fixture(scope="session")
def ansatz_result(g2):
    """The exact symmetric-ansatz pipeline, shared across tests (a few seconds)."""
    return solve_symmetric_ansatz(g2)
