from functools import cache

import pytest

from ocp_moments.expansion import CoefficientTable, expand
from ocp_moments.models import PlasmaParams


@cache
def _table(N: int, Gamma: int) -> CoefficientTable:
    return expand(PlasmaParams(N=N, Gamma=Gamma))


@pytest.fixture(scope="session")
def table():
    """Factory of expanded coefficient tables, shared across the session."""
    return _table
