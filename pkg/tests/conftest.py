import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def builtins():
    from torsorlab.examples import builtin
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = builtin(name)
        return cache[name]

    return get


@pytest.fixture(scope="session")
def gammas(builtins):
    from torsorlab.pretorsor import gamma
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = gamma(builtins(name))
        return cache[name]

    return get
