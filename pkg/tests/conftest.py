import random

import pytest
from hypothesis import HealthCheck, settings

from comonad_workbench.library import kz2

settings.register_profile(
    "exact",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


@pytest.fixture
def rng():
    return random.Random(0)


@pytest.fixture(scope="session")
def h2():
    return kz2()
