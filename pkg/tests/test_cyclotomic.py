from fractions import Fraction as F

from hypothesis import given, strategies as st

from cmperiods.bigvalue import get_context
from cmperiods.cyclotomic import (
    CyclotomicNumber,
    cyclotomic_polynomial,
    mat,
    mat_det,
    mat_inverse_unit_det,
    mat_is_identity,
    mat_mul,
    sin_pi_product,
)

Z = CyclotomicNumber.root
fracs = st.fractions(min_value=0, max_value=1, max_denominator=15)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert len(cyclotomic_polynomial(12)) == 5


def test_sum_of_roots_of_unity_vanishes():
    s = sum((Z(F(k, 7)) for k in range(7)), CyclotomicNumber())
    assert s.is_zero()
    assert not (Z(F(1, 3)) + Z(F(2, 3))).is_zero()
    assert (Z(F(1, 3)) + Z(F(2, 3))).as_rational() == -1


@given(fracs, fracs)
def test_root_multiplication(x, y):
    assert Z(x) * Z(y) == Z(x + y)
    assert (Z(x) * Z(x).conj()).as_rational() == 1


@given(fracs, fracs)
def test_numeric_value_agrees(x, y):
    v = (Z(x) + 2 * Z(y)).value(128).value
    ctx = get_context(128)
    ref = ctx.expjpi(2 * ctx.mpf(x.numerator) / x.denominator) + 2 * ctx.expjpi(2 * ctx.mpf(y.numerator) / y.denominator)
    assert abs(v - ref) < 2.0**-120


def test_sine_product_legendre_ratio():
    num = sin_pi_product(F(5, 6), F(5, 6))
    den = sin_pi_product(F(1, 3), F(1, 3))
    assert (num - F(1, 3) * den).is_zero()


def test_matrix_inverse():
    A = mat(Z(F(1, 5)), 1, 0, Z(F(2, 5)))
    Ainv = mat_inverse_unit_det(A, F(3, 5))
    assert mat_is_identity(mat_mul(A, Ainv))
    assert mat_det(A) == Z(F(3, 5))
