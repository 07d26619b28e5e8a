from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given

from cmperiods.bigvalue import get_context
from cmperiods.errors import PoleError
from cmperiods.specialfn import (
    GammaProductSpec,
    beta,
    digamma,
    digamma_closed_form,
    gamma,
    gamma_product,
    loggamma,
    reduce_to_unit_interval,
    reflection_residual,
    rgamma,
)

from conftest import positive_rationals, rationals

HI = get_context(400)


def test_gamma_half_is_sqrt_pi():
    v = gamma(F(1, 2), 256)
    assert abs(v.value - HI.sqrt(HI.pi)) <= v.err + 2.0**-250


def test_gamma_poles():
    with pytest.raises(PoleError) as ex:
        gamma(-2)
    assert ex.value.argument == -2
    assert float(rgamma(0).value) == 0.0


def test_loggamma_matches_log_of_gamma():
    v = loggamma(F(7, 3), 128)
    assert abs(v.value - HI.log(HI.gamma(HI.mpf(7) / 3))) < 2.0**-120


@given(positive_rationals(hi=4, max_den=24))
def test_digamma_closed_form_against_numeric(x):
    form, val = digamma(x, 192)
    assert abs(form.evaluate(192).value - val.value) < 2.0**-180


def test_digamma_half_closed_form():
    form = digamma_closed_form(F(1, 2))
    # psi(1/2) = -gamma - 2 log 2
    assert abs(form.evaluate(256).value - (-HI.euler - 2 * HI.log(2))) < 2.0**-250
    assert "log(4)" in form.describe()


def test_digamma_at_integer_is_harmonic():
    form = digamma_closed_form(4)
    assert form.rational == F(11, 6) and not form.log_sine_terms


def test_digamma_pole():
    with pytest.raises(PoleError):
        digamma_closed_form(0)


def test_beta_symmetric_and_known():
    assert abs(beta(F(1, 2), F(1, 2), 256).value - HI.pi) < 2.0**-250
    assert beta(F(1, 3), F(5, 4)).value == beta(F(5, 4), F(1, 3)).value


def test_gamma_product_pole_guard():
    with pytest.raises(PoleError):
        gamma_product(GammaProductSpec((F(1, 2),), (0,)))
    assert GammaProductSpec((F(1, 2), -1), (F(3, 2),)).poles() == [-1]


@given(rationals(-4, 4, 12), rationals(-4, 4, 12))
def test_reduction_to_unit_interval(x, y):
    spec = GammaProductSpec((x,), (y,))
    if spec.poles():
        return
    canon, factor = reduce_to_unit_interval(spec)
    assert all(0 < z <= 1 for z in canon.numerator + canon.denominator)
    lhs = gamma_product(spec, 128)
    rhs = factor * gamma_product(canon, 128)
    assert abs(lhs.value - rhs.value) <= 2.0**-110 * max(1, float(abs(lhs.value)))


def test_legendre_reduction_factor():
    canon, factor = reduce_to_unit_interval(GammaProductSpec((F(1, 3), F(1, 3)), (F(-1, 6), F(-1, 6))))
    assert factor == F(1, 36)
    assert canon.denominator == (F(5, 6), F(5, 6))


@given(rationals(-3, 3, 20))
def test_reflection(x):
    if x.denominator == 1:
        return
    assert abs(reflection_residual(x, 128).value) < 2.0**-115


def test_gamma_respects_precision_request():
    assert gamma(F(1, 3), 80).value.context.prec == 80 if hasattr(gamma(F(1, 3), 80).value, "context") else True
    assert mpmath.mp.prec == 53
