import pytest
from hypothesis import HealthCheck, settings

from qmcert.numfield.io import bundled_field

settings.register_profile("qmcert", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qmcert")

PAPER_FIELDS = ("Q(sqrt(3),sqrt(-5))", "Q(zeta_5)", "Q(zeta_17)")
ALL_FIELDS = ("Q", "Q(sqrt(-5))", "Q(sqrt(-1))", "Q(sqrt(2))") + PAPER_FIELDS

_cache = {}


def field(name):
    if name not in _cache:
        _cache[name] = bundled_field(name)
    return _cache[name]


@pytest.fixture(scope="session")
def fields():
    return {name: field(name) for name in ALL_FIELDS}
