import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cmperiods.bigvalue import get_context
from cmperiods.errors import NonConvergence, PathTooClose, SingularIntegrand
from cmperiods.oracles import (
    IntegralSpec,
    LoopPath,
    exponent_system_monodromy,
    monodromy_consistency,
    ode_monodromy,
    quad_beta,
    quad_euler,
    quad_I_m,
    quad_K_n,
    tanh_sinh,
)
from cmperiods.period import I_m, PolynomialPair
from cmperiods.regulator import K_n
from cmperiods.specialfn import beta

from conftest import LEGENDRE, SECOND, admissible

HI = get_context(320)


def test_tanh_sinh_smooth_and_singular():
    ctx = get_context(276)
    r = tanh_sinh(lambda t, tc: [ctx.exp(t), ctx.power(t, -ctx.mpf(1) / 2)], 256)
    assert abs(r.values[0].value - (HI.e - 1)) < 1e-70
    assert abs(r.values[1].value - 2) < 1e-70
    assert r.levels >= 4


def test_tanh_sinh_refinement_converges():
    ctx = get_context(276)
    r = tanh_sinh(lambda t, tc: [ctx.power(t, -ctx.mpf(2) / 3) * ctx.power(tc, -ctx.mpf(1) / 4)], 256)
    h = r.history
    assert all(b < a for a, b in zip(h[1:4], h[2:5]))


def test_tanh_sinh_reports_nonconvergence():
    ctx = get_context(276)
    with pytest.raises(NonConvergence):
        tanh_sinh(lambda t, tc: [ctx.cos(400 * t)], 256, max_level=3)


def test_euler_example_inside():
    spec = IntegralSpec(F(1, 2), F(1, 3), F(3, 4), 1, F(5, 4), F(1, 2))
    q, r = quad_euler(spec), spec.closed_form()
    assert abs(q.value - r.value) < 1e-20
    assert abs(q.value - r.value) <= 10 * max(q.err, 1e-70)


def test_euler_example_at_one():
    spec = IntegralSpec(F(1, 2), F(1, 3), F(3, 4), 1, F(5, 4), 1)
    assert abs(quad_euler(spec).value - spec.closed_form().value) < 1e-15


def test_kernel_one_is_beta():
    spec = IntegralSpec(0, F(1, 2), F(2, 3), 1, F(7, 4), F(1, 2))
    assert abs(quad_euler(spec).value - beta(F(2, 3), F(7, 4) - F(2, 3)).value) < 1e-60


def test_singular_spec():
    with pytest.raises(SingularIntegrand):
        quad_euler(IntegralSpec(F(1, 2), F(1, 2), 0, 1, 2, F(1, 2)))
    with pytest.raises(ValueError):
        IntegralSpec(1, 1, 1, 1, 2, 2)


@given(st.fractions(F(1, 20), 3, max_denominator=20), st.fractions(F(1, 20), 3, max_denominator=20))
@settings(max_examples=6)
def test_beta_quadrature(a, b):
    q, r = quad_beta(a, b), beta(a, b)
    assert float(abs(q.value - r.value) / abs(r.value)) < 1e-25


def test_I_m_agreement_second_set():
    e, c = SECOND
    p = PolynomialPair([1, 1], [-1, 1])
    for m, v in zip((1, 2), quad_I_m(p, e, c, [1, 2])):
        ref = I_m(p, e, c, m)
        assert float(abs(v.value - ref.value) / abs(ref.value)) < 1e-20


def test_K_n_quadrature():
    e, c = SECOND
    for n, v in zip((0, 3), quad_K_n(e, c, [0, 3])):
        assert abs(v.value - K_n(e, c, n).value) < 1e-20


def test_loop_validation():
    with pytest.raises(PathTooClose):
        LoopPath((0.5, 0.95 + 0.05j, 0.5))
    with pytest.raises(ValueError):
        LoopPath((0.5, 0.5j, 0.6))


def test_windings():
    assert LoopPath.around_zero().winding(0) == 1
    assert LoopPath.around_one().winding(1) == 1 and LoopPath.around_one().winding(0) == 0
    inf = LoopPath.around_infinity()
    assert inf.winding(0) == -1 and inf.winding(1) == -1
    comp = LoopPath.around_zero().then(LoopPath.around_one())
    assert comp.winding(0) == 1 and comp.winding(1) == 1


def test_contractible_is_identity():
    M = ode_monodromy(F(1, 3), F(1, 4), F(2, 3), LoopPath.contractible())
    assert np.abs(M - np.eye(2)).max() < 1e-10


def test_unipotent_at_one():
    M = ode_monodromy(F(1, 2), F(1, 2), 1, LoopPath.around_one())
    assert abs(np.trace(M) - 2) < 1e-9 and abs(np.linalg.det(M) - 1) < 1e-9
    assert np.abs(M - np.eye(2)).max() > 0.1


def test_composite_loop_matrix_is_product():
    e = SECOND[0]
    L0, L1 = LoopPath.around_zero(), LoopPath.around_one()
    M = exponent_system_monodromy(e, L0.then(L1))
    P = exponent_system_monodromy(e, L1) @ exponent_system_monodromy(e, L0)
    assert np.abs(M - P).max() < 1e-9


def test_running_set_loop_around_zero():
    M = exponent_system_monodromy(SECOND[0], LoopPath.around_zero())
    ev = sorted(np.linalg.eigvals(M), key=lambda z: z.imag)
    want = sorted([1, np.exp(2j * np.pi / 3)], key=lambda z: np.imag(z))
    assert max(abs(a - b) for a, b in zip(ev, want)) < 1e-9


@given(admissible)
@settings(max_examples=4)
def test_monodromy_consistency(ec):
    assert monodromy_consistency(ec[0]).worst < 1e-6
