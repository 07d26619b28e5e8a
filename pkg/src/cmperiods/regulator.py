"""Regulator side: K_n, J_m and the three-term decomposition with an exact
non-vanishing certificate for the Beta * 3F2 coefficient."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bigvalue import DEFAULT_PREC, BigValue
from .contiguous import kn_reduce_table
from .errors import PoleError, VanishingCm
from .hyper import HyperParams, pfq
from .params import CharacterIndex, ExponentData, validate
from .period import C_m, I_m, PolynomialPair, period_gamma_spec, two_pi_i
from .specialfn import beta, gamma_product


def _check(e: ExponentData, c: CharacterIndex):
    rep = validate(e, c)
    if not rep.integrality_ok:
        bad = rep.violations[-1]
        raise PoleError(f"{bad.label} = {bad.value} is an integer", bad.value)
    lower = e.a + e.b
    if lower.denominator == 1 and lower <= 0:
        raise PoleError(f"lower parameter a+b = {lower} is a nonpositive integer", lower)


@dataclass(frozen=True)
class ConnectionConstants:
    """(lambda0, lambda1, lambda2) with provenance flags.

    ``lambda2_over_beta`` holds lambda2 / B(a, b) when it is a known
    rational; the exact certificate needs it.
    """

    lambda0: BigValue
    lambda1: BigValue
    lambda2: BigValue
    lambda2_over_beta: Fraction | None = None
    lambda1_exact: Fraction | None = None
    provenance: dict = field(default_factory=dict)

    @classmethod
    def defaults(cls, e: ExponentData, prec: int = DEFAULT_PREC) -> "ConnectionConstants":
        """lambda0 = 2 pi i, lambda2 = -lambda0/(2 pi i) B(a, b) = -B(a, b), lambda1 = 0."""
        lam0 = two_pi_i(prec)
        lam2 = -beta(e.a, e.b, prec)
        prov = {"lambda0": "default", "lambda1": "default", "lambda2": "default"}
        return cls(lam0, BigValue.exact(0, prec), lam2, Fraction(-1), Fraction(0), prov)

    def to_json(self, digits: int = 30) -> dict:
        return {
            "lambda0": self.lambda0.to_decimal(digits),
            "lambda1": self.lambda1.to_decimal(digits),
            "lambda2": self.lambda2.to_decimal(digits),
            "lambda2_over_beta": None if self.lambda2_over_beta is None else str(self.lambda2_over_beta),
            "provenance": dict(sorted(self.provenance.items())),
        }


def base_params(e: ExponentData, c: CharacterIndex, n: int = 0) -> HyperParams:
    Q = c.q + e.alpha1 + n
    return HyperParams((e.a, e.b, Q), (e.a + e.b, Q + 1), 1)


def K_n(e: ExponentData, c: CharacterIndex, n: int, prec: int = DEFAULT_PREC) -> BigValue:
    """(q+alpha1+n)^-1 3F2(a, b, q+alpha1+n; a+b, q+alpha1+n+1; 1); margin is 1."""
    _check(e, c)
    Q = c.q + e.alpha1 + n
    return pfq(base_params(e, c, n), prec) / BigValue.exact(Q, prec)


def base_3f2(e: ExponentData, c: CharacterIndex, prec: int = DEFAULT_PREC) -> BigValue:
    """B(a, b) 3F2(a, b, alpha1+q; a+b, alpha1+q+1; 1)."""
    _check(e, c)
    return beta(e.a, e.b, prec) * pfq(base_params(e, c), prec)


def J_m(p: PolynomialPair, e: ExponentData, c: CharacterIndex, m: int, prec: int = DEFAULT_PREC) -> BigValue:
    """sum_{i >= -1} (d_i - (m+q+i) d'_{i+1}) K_{m+i}, summed numerically."""
    _check(e, c)
    acc = BigValue.exact(0, prec)
    for i, w in p.combination(c.q, m):
        acc = acc + w * K_n(e, c, m + i, prec)
    return acc


def J_m_reduction(p: PolynomialPair, e: ExponentData, c: CharacterIndex, m: int) -> tuple[Fraction, Fraction]:
    """Exact (C_m/(q+alpha1), P'') with B(a,b) J_m = C_m/(q+alpha1) * base_3f2 + P''."""
    comb = p.combination(c.q, m)
    if not comb:
        return Fraction(0), Fraction(0)
    table = kn_reduce_table(e, c, m + comb[-1][0])
    lead = sum((w * table[m + i].p_n for i, w in comb), Fraction(0))
    rest = sum((w * table[m + i].pprime_n for i, w in comb), Fraction(0))
    return lead, rest


@dataclass(frozen=True)
class Certificate:
    c_m: Fraction
    lead: Fraction
    p_double_prime: Fraction
    exact_3f2_factor: Fraction | None
    multiplier_exact: Fraction | None
    nonzero: bool | None

    def to_json(self) -> dict:
        s = lambda x: None if x is None else str(x)  # noqa: E731
        return {
            "C_m": s(self.c_m),
            "C_m_over_q_plus_alpha1": s(self.lead),
            "p_double_prime": s(self.p_double_prime),
            "exact_3f2_factor": s(self.exact_3f2_factor),
            "multiplier_exact": s(self.multiplier_exact),
            "coeff_3f2_nonzero": self.nonzero,
        }


@dataclass(frozen=True)
class RegulatorDecomposition:
    coeff_unit: BigValue
    coeff_gamma: BigValue
    coeff_3f2: BigValue
    base_3f2: BigValue
    gamma_value: BigValue
    total: BigValue
    offset: BigValue
    certificate: Certificate
    offset_is_default: bool = True

    @property
    def reconstruction(self) -> BigValue:
        return self.coeff_unit + self.coeff_gamma * self.gamma_value + self.coeff_3f2 * self.base_3f2

    @property
    def residual(self) -> BigValue:
        return self.total - self.reconstruction

    def to_json(self, digits: int = 40) -> dict:
        d = lambda v: v.to_decimal(digits)  # noqa: E731
        return {
            "coeff_unit": d(self.coeff_unit),
            "coeff_gamma": d(self.coeff_gamma),
            "coeff_3f2": d(self.coeff_3f2),
            "base_3f2": d(self.base_3f2),
            "gamma_value": d(self.gamma_value),
            "total": d(self.total),
            "offset": d(self.offset),
            "offset_is_default": self.offset_is_default,
            "residual_abs": float(abs(self.residual.value)),
            "residual_bound": self.residual.err,
            "certificate": self.certificate.to_json(),
        }


def regulator_decompose(
    p: PolynomialPair,
    e: ExponentData,
    c: CharacterIndex,
    m: int,
    consts: ConnectionConstants | None = None,
    multiplier=Fraction(1),
    offset=None,
    prec: int = DEFAULT_PREC,
) -> RegulatorDecomposition:
    """Split mult*[(l1/l) I_m + (l2/l) J_m] + offset over 1, the period Gamma-product and B*3F2.

    ``total`` is assembled from the numeric J_m (sum of K_n) and the closed
    form of I_m; the coefficients come from the exact reduction, so
    ``residual`` tests the reduction against independent numerics.
    """
    _check(e, c)
    consts = consts or ConnectionConstants.defaults(e, prec)
    cm = C_m(p, e, c, m)
    if cm == 0:
        raise VanishingCm(f"C_{m} = 0")
    lead, rest = J_m_reduction(p, e, c, m)
    l = c.l
    q = c.q
    mult_exact = multiplier if isinstance(multiplier, (int, Fraction)) else None
    mult = multiplier if isinstance(multiplier, BigValue) else BigValue.exact(Fraction(multiplier), prec)
    off_default = offset is None
    off = BigValue.exact(0, prec) if offset is None else (
        offset if isinstance(offset, BigValue) else BigValue.exact(Fraction(offset), prec)
    )
    B = beta(e.a, e.b, prec)
    lam1, lam2 = consts.lambda1, consts.lambda2
    # coefficient of B*3F2 and of 1
    if consts.lambda2_over_beta is not None:
        rho = consts.lambda2_over_beta
        factor_3f2 = rho * lead / l
        coeff_3f2 = mult * factor_3f2
        coeff_unit = mult * (rho * rest / l) + off
    else:
        factor_3f2 = None
        coeff_3f2 = mult * (lam2 / B) * (lead / l)
        coeff_unit = mult * (lam2 / B) * (rest / l) + off
    conv = 1 / ((q - e.beta1) * (q - e.beta2))
    coeff_gamma = mult * lam1 * (cm * conv / l)
    gamma_val = gamma_product(period_gamma_spec(e, c), prec)
    base = base_3f2(e, c, prec)
    total = mult * (lam1 * I_m(p, e, c, m, prec) / l + lam2 * J_m(p, e, c, m, prec) / l) + off
    if factor_3f2 is not None and mult_exact is not None:
        nonzero = factor_3f2 != 0 and Fraction(mult_exact) != 0
    elif factor_3f2 is not None:
        nonzero = None if factor_3f2 == 0 else abs(mult.value) > mult.err
    else:
        nonzero = None
    cert = Certificate(cm, lead, rest, factor_3f2, None if mult_exact is None else Fraction(mult_exact), nonzero)
    return RegulatorDecomposition(coeff_unit, coeff_gamma, coeff_3f2, base, gamma_val, total, off, cert, off_default)
