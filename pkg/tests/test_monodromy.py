from fractions import Fraction as F

import pytest
from hypothesis import given

from cmperiods.errors import ReducibleSystem
from cmperiods.monodromy import (
    build_local_system,
    epsilon_exact,
    eigenvalues_numeric,
    gauss_parameters,
    has_common_eigenvector,
    riemann_scheme,
    twisted_exponents,
)
from cmperiods.params import ExponentData

from conftest import LEGENDRE, SECOND, admissible


@given(admissible)
def test_exact_identities(ec):
    ls = build_local_system(ec[0])
    assert ls.product_is_identity()
    assert ls.trace_identity_holds()
    assert ls.determinants_hold()


@given(admissible)
def test_irreducible_means_no_common_eigenvector(ec):
    ls = build_local_system(ec[0])
    assert not has_common_eigenvector(ls.T0, ls.T1)


def test_reducible_raises():
    with pytest.raises(ReducibleSystem):
        build_local_system(ExponentData(0, F(1, 2), F(1, 2), 0))


def test_legendre_epsilon():
    # -2 + 2 z(-1/2) = -4
    assert epsilon_exact(LEGENDRE[0]).as_rational() == -4
    assert abs(complex(build_local_system(LEGENDRE[0]).epsilon.value) + 4) < 1e-70


def test_numeric_matrices_and_eigenvalues():
    ls = build_local_system(SECOND[0])
    T = ls.numeric(128)
    ev = sorted(eigenvalues_numeric(T["T0"]), key=lambda z: z.imag)
    want = sorted(riemann_scheme(SECOND[0]).eigenvalues("0"), key=lambda z: z.imag)
    assert max(abs(a - b) for a, b in zip(ev, want)) < 1e-12


def test_tinf_characteristic_polynomial():
    # beta1 = beta2 here, so compare trace and determinant rather than eigenvalues
    e = SECOND[0]
    M = build_local_system(e).numeric(128)["Tinf"]
    z = riemann_scheme(e).eigenvalues("inf", 128)
    assert abs(complex(M[0, 0] + M[1, 1]) - (z[0] + z[1])) < 1e-14
    assert abs(complex(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]) - z[0] * z[1]) < 1e-14


def test_riemann_scheme_fuchs_relation():
    for e, _ in (LEGENDRE, SECOND):
        assert riemann_scheme(e).exponent_sum == 1


def test_gauss_parameters_and_twist():
    e, c = SECOND
    assert gauss_parameters(e) == (F(1, 3), F(1, 3), F(2, 3))
    assert twisted_exponents(e) == ((0, F(1, 3)), (F(1, 3), F(1, 3)))
    assert twisted_exponents(e, c) == ((F(1, 5), F(8, 15)), (F(2, 15), F(2, 15)))
