import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from cmperiods.params import RUNNING_SETS, random_admissible

settings.register_profile(
    "default", deadline=None, max_examples=25, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

LEGENDRE, SECOND = RUNNING_SETS


@pytest.fixture(params=[0, 1], ids=["legendre", "second"])
def running(request):
    return RUNNING_SETS[request.param]


def rationals(lo=-3, hi=3, max_den=12):
    return st.fractions(min_value=lo, max_value=hi, max_denominator=max_den)


def positive_rationals(hi=3, max_den=12):
    return st.fractions(min_value=Fraction(1, max_den), max_value=hi, max_denominator=max_den)


admissible = st.integers(0, 10**6).map(lambda s: random_admissible(random.Random(s)))
