import threading
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from cmperiods.bigvalue import BigValue, close, get_context, to_mp


def test_exact_dyadic_has_no_error():
    assert BigValue.exact(Fraction(3, 8)).err == 0.0
    assert BigValue.exact(5).err == 0.0


def test_exact_non_dyadic_carries_one_rounding():
    v = BigValue.exact(Fraction(1, 3), 128)
    assert 0 < v.err < 2.0**-126
    assert abs(v.value - get_context(300).mpf(1) / 3) <= v.err


def test_context_is_per_precision_and_leaves_global_alone():
    before = mpmath.mp.prec
    assert get_context(200).prec == 200
    assert get_context(200) is get_context(200)
    assert mpmath.mp.prec == before


def test_contexts_are_thread_local():
    seen = []

    def worker():
        seen.append(get_context(256))

    t = threading.Thread(target=worker)
    t.start()
    t.join()
    assert seen[0] is not get_context(256)
    assert seen[0].prec == 256


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_error_bound_encloses_exact_results(x, y):
    a, b = BigValue.exact(x, 96), BigValue.exact(y, 96)
    hi = get_context(400)
    for got, want in ((a + b, x + y), (a - b, x - y), (a * b, x * y)):
        assert abs(got.value - to_mp(want, hi)) <= got.err + 1e-300
    if y != 0:
        q = a / b
        assert abs(q.value - to_mp(x / y, hi)) <= q.err


def test_reflected_operations():
    v = BigValue.exact(2)
    assert float(3 - v) == 1.0
    assert float(1 / v) == 0.5
    assert float(Fraction(1, 2) * v) == 1.0


def test_division_by_uncertain_zero():
    z = BigValue(get_context(64).mpf(0), 64, 1e-10)
    with pytest.raises(ZeroDivisionError):
        BigValue.exact(1, 64) / z


def test_complex_parts_and_conjugate():
    ctx = get_context(128)
    v = BigValue(ctx.mpc(1, 2), 128)
    assert not v.is_real
    assert float(v.real) == 1.0 and float(v.imag) == 2.0
    assert complex(v.conjugate()) == complex(1, -2)


def test_to_decimal_is_deterministic_string():
    v = BigValue.exact(Fraction(1, 7), 256)
    s = v.to_decimal(30)
    assert s.startswith("0.142857142857142857")
    assert s == BigValue.exact(Fraction(1, 7), 256).to_decimal(30)


def test_close_uses_error_bars():
    a = BigValue.exact(1, 64).with_err(1e-5)
    assert close(a, 1.000001)
    assert not close(BigValue.exact(1, 64), 1.1)
