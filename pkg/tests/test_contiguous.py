import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from cmperiods.contiguous import (
    ThreeF2At1,
    a_chain,
    bailey_transform,
    kn_reduce,
    kn_reduce_table,
    q_step_coefficients,
    q_step_relation,
    q_chain,
    random_tuple,
    three_term,
)
from cmperiods.errors import DivergentSeries, PoleError
from cmperiods.period import a_n
from cmperiods.regulator import K_n, base_3f2
from cmperiods.specialfn import beta

from conftest import LEGENDRE, SECOND

TOL = 2.0**-200
seeds = st.integers(0, 10**6)


def test_margin_of_parametrized_3f2():
    assert ThreeF2At1(F(1, 2), F(1, 3), F(3, 2), F(1, 4)).margin == F(5, 3)


def test_q_step_coefficients():
    assert q_step_coefficients(F(1, 2), F(1, 2), 1, F(1, 3)) == (F(5, 6) ** 2 / F(4, 3), F(1, 3))


@given(seeds)
@settings(max_examples=10)
def test_q_step(seed):
    t = random_tuple(random.Random(seed), "q-step")
    assert float(abs(q_step_relation(*t).residual.value)) < TOL


@given(seeds)
@settings(max_examples=10)
def test_bailey(seed):
    t = random_tuple(random.Random(seed), "bailey")
    r = bailey_transform(*t)
    assert float(abs(r.residual.value)) < TOL * max(1, float(abs(r.lhs.value)))


@pytest.mark.parametrize("variant", ["q-shift", "a-shift"])
@given(seed=seeds)
@settings(max_examples=6)
def test_three_term_at_one(variant, seed):
    t = random_tuple(random.Random(seed), "three-term-1")
    assert float(abs(three_term(*t, variant).value)) < TOL


@pytest.mark.parametrize("variant", ["q-shift", "a-shift"])
@given(seed=seeds, x=st.fractions(F(1, 20), F(19, 20), max_denominator=20))
@settings(max_examples=6)
def test_three_term_inside(variant, seed, x):
    t = random_tuple(random.Random(seed), "three-term-x")
    assert float(abs(three_term(*t, variant, x).value)) < TOL


def test_three_term_at_one_needs_margin():
    with pytest.raises(DivergentSeries):
        three_term(F(3, 2), F(3, 2), F(1, 2), F(1, 2), "q-shift")


def test_unknown_variant():
    with pytest.raises(ValueError):
        three_term(F(5, 2), F(5, 2), F(1, 2), F(1, 3), "b-shift", F(1, 2))


@given(seeds, st.integers(1, 4))
@settings(max_examples=8)
def test_q_chain(seed, steps):
    a, b, c, q = t = random_tuple(random.Random(seed), "q-step")
    assume(all((q + j + 1 - a) * (q + j + 1 - b) != 0 for j in range(steps)))
    assert float(abs(q_chain(*t, steps).residual().value)) < TOL


def test_q_chain_degenerate_step():
    # b = q+1 kills the leading coefficient of the first step
    with pytest.raises(PoleError):
        q_chain(F(1, 7), F(2), F(184, 63), F(1), 1)


def test_a_chain():
    a, b, c, q = F(1, 2), F(4, 3), F(5, 3), F(7, 5)
    assert float(abs(a_chain(a, b, c, q).residual().value)) < TOL
    with pytest.raises(DivergentSeries):
        a_chain(a, b, c, F(1, 2))


def test_kn_reduce_known_values():
    e, c = SECOND
    r = kn_reduce(e, c, 1)
    assert (r.p_n, r.pprime_n) == (F(120, 169), F(225, 169))
    assert (kn_reduce(e, c, 0).p_n, kn_reduce(e, c, 0).pprime_n) == (5, 0)
    assert kn_reduce(*LEGENDRE, 2).p_n == F(768, 3025)


@pytest.mark.parametrize("ec", [LEGENDRE, SECOND], ids=["legendre", "second"])
def test_kn_reduce_matches_numerics(ec):
    e, c = ec
    table = kn_reduce_table(e, c, 6)
    base = base_3f2(e, c)
    B = beta(e.a, e.b)
    for n, row in enumerate(table):
        assert row.p_n == a_n(e, c, n) / (c.q + e.alpha1)
        r = B * K_n(e, c, n) - (row.p_n * base + row.pprime_n)
        assert float(abs(r.value)) < TOL
