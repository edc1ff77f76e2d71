import functools

import pytest
from hypothesis import HealthCheck, settings

from peterweyl.groups import build_group
from peterweyl.scenarios import Scenario, build_context

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def chain_for(family, q):
    return build_group(family, q)


@functools.lru_cache(maxsize=None)
def context_for(family, q, character):
    return build_context(Scenario(family, q, tuple(character)))


@pytest.fixture(scope="session")
def sl2_2():
    return chain_for("SL2", 2)


@pytest.fixture(scope="session")
def sl2_3():
    return chain_for("SL2", 3)


@pytest.fixture(scope="session")
def gl2_3():
    return chain_for("GL2", 3)


SCENARIO_KEYS = [("SL2", 2, (0,)), ("SL2", 3, (0,)), ("SL2", 3, (1,)), ("GL2", 3, (0, 0)), ("GL2", 3, (0, 1))]


@pytest.fixture(scope="session", params=SCENARIO_KEYS, ids=lambda k: f"{k[0]}({k[1]})-{'-'.join(map(str, k[2]))}")
def ctx(request):
    return context_for(*request.param)
