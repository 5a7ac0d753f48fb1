import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from qmonoidal.theory import builtin_theory

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(0, 12), st.integers(1, 6))
unit_interval = st.builds(lambda a, b: Fraction(min(a, b), max(a, b, 1)), st.integers(0, 8), st.integers(0, 8))


@pytest.fixture(scope="session")
def ha():
    return builtin_theory("HA_R", "bool")


@pytest.fixture(scope="session")
def ha_nonneg():
    return builtin_theory("HA_R", "nonneg")


@pytest.fixture(scope="session")
def preord():
    return builtin_theory("PreOrd_R", "bool")


@pytest.fixture(scope="session")
def ca():
    return builtin_theory("CA")


@pytest.fixture(scope="session")
def ba():
    return builtin_theory("BA")


@pytest.fixture
def rng():
    return random.Random(1234)
