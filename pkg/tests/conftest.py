import pytest

from diagsemi.catalog import standard_generators
from diagsemi.engine import enumerate_family

_CACHE = {}


def monoid(family, n):
    """Enumerated family monoid, cached across the whole test session."""
    key = (family, n)
    if key not in _CACHE:
        _CACHE[key] = enumerate_family(standard_generators(family, n))
    return _CACHE[key]


@pytest.fixture(scope="session")
def get_monoid():
    return monoid
