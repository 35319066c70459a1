import pytest
from hypothesis import HealthCheck, settings

from macpair.exactfield import SymbolicField
from macpair.macdonald import BasisCache

# exact arithmetic and the sympy oracle have no meaningful per-example deadline
settings.register_profile("exact", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("exact")


@pytest.fixture(scope="session")
def sym():
    return SymbolicField()


@pytest.fixture(scope="session")
def caches(sym):
    """Shared symbolic caches for n = 1, 2, 3."""
    return {n: BasisCache(n, sym) for n in (1, 2, 3)}
