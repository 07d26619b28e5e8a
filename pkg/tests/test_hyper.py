import time
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cmperiods.bigvalue import get_context, to_mp
from cmperiods.errors import DivergentSeries, PoleError
from cmperiods.hyper import (
    HyperParams,
    basis_F1_F2,
    euler_at_1,
    hyp,
    log_expansion_at_1,
    pfq,
)
from cmperiods.params import ExponentData

from conftest import LEGENDRE, SECOND, positive_rationals

HI = get_context(320)


def gauss_closed(a, b, c):
    """Gauss's sum, via mpmath Gamma at high precision."""
    g = lambda x: HI.gamma(to_mp(x, HI))  # noqa: E731
    return g(c) * g(c - a - b) / (g(c - a) * g(c - b))


def test_margin():
    assert HyperParams((F(1, 2), F(1, 3), F(1, 5)), (1, F(6, 5))).margin == F(7, 6)


@given(positive_rationals(2), positive_rationals(2), st.fractions(F(1, 10), 3, max_denominator=10))
@settings(max_examples=15)
def test_gauss_sum_at_one(a, b, s):
    c = a + b + s
    v = pfq(HyperParams((a, b), (c,)), 256)
    assert abs(v.value - gauss_closed(a, b, c)) <= 2.0**-240 * float(abs(v.value))


def test_small_margin_3f2_at_one():
    # margin 1/10: the asymptotic tail does the work
    a, b, c = F(3, 5), F(1, 2), F(6, 5)
    v = pfq(HyperParams((a, b), (c,)), 256)
    assert abs(v.value - gauss_closed(a, b, c)) < 2.0**-240


def test_inside_disk_matches_mpmath_2f1():
    v = hyp((F(1, 3), F(2, 5)), (F(7, 4),), F(-3, 4), 256)
    ref = HI.hyp2f1(HI.mpf(1) / 3, HI.mpf(2) / 5, HI.mpf(7) / 4, HI.mpf(-3) / 4)
    assert abs(v.value - ref) < 2.0**-245


def test_terminating_series_is_exact_rational():
    # 2F1(-3, 1; 2; 1/2) = sum_{n<=3} (-3)_n (1)_n/((2)_n n!) 2^-n
    v = hyp((-3, 1), (2,), F(1, 2), 128)
    assert v.err == 0 or v.err < 2.0**-120
    assert abs(v.value - to_mp(F(15, 32), HI)) < 2.0**-120


def test_divergence_and_poles():
    with pytest.raises(DivergentSeries):
        pfq(HyperParams((F(1, 2), F(1, 2)), (1,)))
    with pytest.raises(PoleError):
        pfq(HyperParams((F(1, 2),), (-2,), F(1, 2)))
    with pytest.raises(DivergentSeries):
        pfq(HyperParams((F(1, 2), 1), (F(1, 3),), 2))


def test_running_3f2_speed_and_value():
    # K_0 of the second running set times 1/5; frozen from quadrature
    t0 = time.perf_counter()
    v = pfq(HyperParams((F(1, 3), F(1, 3), F(1, 5)), (F(2, 3), F(6, 5))), 256)
    assert time.perf_counter() - t0 < 2.0
    assert abs(5 * v.value - HI.mpf("5.249469759177425811558423953149510860193")) < 1e-38


def test_euler_at_1_zero_on_pole():
    # c - a = -1 puts Gamma(c-a) at a pole, so the sum is exactly zero
    assert float(abs(euler_at_1(3, F(-3, 2), 2).value)) == 0.0
    assert abs(euler_at_1(F(1, 3), F(1, 4), 2).value - gauss_closed(F(1, 3), F(1, 4), 2)) < 2.0**-240


def test_basis_functions_at_half():
    e = SECOND[0]
    f1, f2 = basis_F1_F2(e, F(1, 2), 256)
    ref2 = HI.hyp2f1(*(to_mp(x, HI) for x in (e.a, e.b, e.c_lower)), HI.mpf(1) / 2)
    ref1 = HI.hyp2f1(*(to_mp(x, HI) for x in (e.a, e.b, 1)), HI.mpf(1) / 2)
    assert abs(f2.value - ref2) < 2.0**-240
    assert abs(f1.value - ref1) < 2.0**-240


def test_basis_accepts_equal_alphas():
    f1, f2 = basis_F1_F2(LEGENDRE[0], F(1, 3), 128)
    assert float(abs(f1.value)) > 0 and float(abs(f2.value)) > 0


def test_basis_pole():
    with pytest.raises(PoleError):
        basis_F1_F2(ExponentData.unchecked(0, 1, 0, 0), F(1, 2))


def test_log_expansion_leading_coefficient():
    ex = log_expansion_at_1(F(1, 2), F(1, 2), 20, 256)
    assert abs(ex.coefficients[0].value - 4 * HI.log(2)) < 1e-70
    assert abs(ex.log_coefficient(0).value + 1 / HI.pi) < 1e-70


def test_log_expansion_against_series():
    ex = log_expansion_at_1(F(1, 3), F(1, 2), 24, 256)
    t = F(9, 10)
    series = hyp((F(1, 3), F(1, 2)), (F(5, 6),), t, 256)
    assert abs(ex.evaluate(t).value - series.value) < 1e-20
