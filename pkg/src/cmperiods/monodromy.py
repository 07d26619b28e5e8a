"""Symbolic monodromy of the rank-two local system and its Riemann scheme."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .bigvalue import DEFAULT_PREC, BigValue, get_context
from .cyclotomic import (
    CyclotomicNumber,
    Matrix,
    mat,
    mat_det,
    mat_inverse_unit_det,
    mat_is_identity,
    mat_mul,
    mat_trace,
)
from .errors import ReducibleSystem
from .params import CharacterIndex, ExponentData, frac_part

Z = CyclotomicNumber.root


def epsilon_exact(e: ExponentData) -> CyclotomicNumber:
    """-z(a1) - z(a2) + z(-b1) + z(-b2), z(x) = exp(2 pi i x)."""
    return -Z(e.alpha1) - Z(e.alpha2) + Z(-e.beta1) + Z(-e.beta2)


@dataclass(frozen=True)
class LocalSystem:
    """T1, T0, Tinf on the basis (delta, gamma); columns are images of basis vectors."""

    exponents: ExponentData
    T1: Matrix
    T0: Matrix
    Tinf: Matrix
    epsilon_exact: CyclotomicNumber

    @property
    def epsilon(self) -> BigValue:
        return self.epsilon_exact.value()

    def numeric(self, prec: int = DEFAULT_PREC) -> dict:
        ctx = get_context(prec)
        out = {}
        for name in ("T1", "T0", "Tinf"):
            M = getattr(self, name)
            out[name] = ctx.matrix([[M[i][j].value(prec).value for j in range(2)] for i in range(2)])
        return out

    def product_is_identity(self) -> bool:
        return mat_is_identity(mat_mul(self.Tinf, mat_mul(self.T1, self.T0)))

    def trace_identity_holds(self) -> bool:
        """Tr(T1 T0) = z(-b1) + z(-b2)."""
        e = self.exponents
        return (mat_trace(mat_mul(self.T1, self.T0)) - Z(-e.beta1) - Z(-e.beta2)).is_zero()

    def determinants_hold(self) -> bool:
        e = self.exponents
        return (mat_det(self.T0) - Z(e.alpha1 + e.alpha2)).is_zero() and (
            mat_det(self.Tinf) - Z(e.beta1 + e.beta2)
        ).is_zero()


def build_local_system(e: ExponentData) -> LocalSystem:
    eps = epsilon_exact(e)
    if eps.is_zero():
        raise ReducibleSystem("epsilon vanishes: some alpha_i + beta_j is an integer")
    T1 = mat(1, 1, 0, 1)
    T0 = mat(Z(e.alpha2), 0, eps, Z(e.alpha1))
    Tinf = mat_inverse_unit_det(mat_mul(T1, T0), e.alpha1 + e.alpha2)
    return LocalSystem(e, T1, T0, Tinf, eps)


def has_common_eigenvector(A: Matrix, B: Matrix) -> bool:
    """2x2 criterion: a common eigenvector exists iff det(AB - BA) = 0."""
    AB, BA = mat_mul(A, B), mat_mul(B, A)
    C = tuple(tuple(AB[i][j] - BA[i][j] for j in range(2)) for i in range(2))
    return mat_det(C).is_zero()


def twisted_exponents(e: ExponentData, c: CharacterIndex | None = None):
    """Exponents at 0 and infinity after twisting by the character index.

    With ``c=None`` (the untwisted k/l = 0 convention) the exponents are
    returned as stored.
    """
    if c is None:
        return (e.alpha1, e.alpha2), (e.beta1, e.beta2)
    q = c.q
    return (
        (frac_part(q + e.alpha1), frac_part(q + e.alpha2)),
        (frac_part(-q + e.beta1), frac_part(-q + e.beta2)),
    )


@dataclass(frozen=True)
class RiemannScheme:
    at0: tuple[Fraction, Fraction]
    at1: tuple[Fraction, Fraction]
    atinf: tuple[Fraction, Fraction]

    @property
    def exponent_sum(self) -> Fraction:
        return sum(self.at0 + self.at1 + self.atinf, Fraction(0))

    def eigenvalues(self, point: str, prec: int = 53) -> list[complex]:
        """exp(2 pi i rho) for the exponents rho at 0, 1 or inf."""
        ex = {"0": self.at0, "1": self.at1, "inf": self.atinf}[point]
        ctx = get_context(prec)
        return [complex(ctx.expjpi(2 * ctx.mpf(r.numerator) / r.denominator)) for r in ex]


def riemann_scheme(e: ExponentData) -> RiemannScheme:
    """Local exponents of the rank-two system: (a1, a2) at 0, (0, 0) at 1, (b1, b2) at infinity."""
    return RiemannScheme((e.alpha1, e.alpha2), (Fraction(0), Fraction(0)), (e.beta1, e.beta2))


def gauss_parameters(e: ExponentData) -> tuple[Fraction, Fraction, Fraction]:
    """(a, b, c) of the Gauss equation solved by t^-alpha1 times the local solutions."""
    return e.a, e.b, e.c_lower


def eigenvalues_numeric(M) -> list[complex]:
    ev = mpmath.eig(mpmath.matrix(M), left=False, right=False)
    return [complex(x) for x in ev]
