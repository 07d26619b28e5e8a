"""Period side: coefficients a_n and C_m, the integrals I_m, the Gamma-product
period with its Hodge type, the duality identity and the moment determinant."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bigvalue import DEFAULT_PREC, BigValue, get_context
from .cyclotomic import CyclotomicNumber, sin_pi_product
from .errors import ExhaustedSearch, PoleError
from .params import (
    CharacterIndex,
    ExponentData,
    as_fraction,
    frac_part,
    pochhammer,
    validate,
)
from .specialfn import GammaProductSpec, gamma_product, reduce_to_unit_interval


@dataclass(frozen=True)
class PolynomialPair:
    """Coefficients of p0(t) = sum d_i t^i and p1(t) = sum d'_i t^i, with p1(1) = 0."""

    d: tuple
    dprime: tuple = ()

    def __init__(self, d: Sequence = (), dprime: Sequence = ()):
        object.__setattr__(self, "d", tuple(as_fraction(x) for x in d))
        object.__setattr__(self, "dprime", tuple(as_fraction(x) for x in dprime))
        if sum(self.dprime, Fraction(0)) != 0:
            raise ValueError("p1 must vanish at t = 1 (coefficients of p1 must sum to 0)")

    def coeff(self, i: int) -> Fraction:
        return self.d[i] if 0 <= i < len(self.d) else Fraction(0)

    def coeff_prime(self, i: int) -> Fraction:
        return self.dprime[i] if 0 <= i < len(self.dprime) else Fraction(0)

    @property
    def top(self) -> int:
        return max(len(self.d), len(self.dprime))

    def is_zero(self) -> bool:
        return not any(self.d) and not any(self.dprime)

    def combination(self, q: Fraction, m: int) -> list[tuple[int, Fraction]]:
        """Pairs (i, d_i - d'_{i+1}(q+m+i)) for i >= -1, zeros dropped."""
        out = []
        for i in range(-1, self.top):
            w = self.coeff(i) - self.coeff_prime(i + 1) * (q + m + i)
            if w:
                out.append((i, w))
        return out

    def to_json(self) -> dict:
        return {"d": [str(x) for x in self.d], "dprime": [str(x) for x in self.dprime]}


def _require_main(e: ExponentData, c: CharacterIndex):
    rep = validate(e, c)
    if not rep.integrality_ok:
        bad = rep.violations[-1]
        raise PoleError(f"{bad.label} = {bad.value} is an integer", bad.value)


def a_n(e: ExponentData, c: CharacterIndex, n: int) -> Fraction:
    q = c.q
    return (
        pochhammer(e.alpha1 + q, n)
        * pochhammer(e.alpha2 + q, n)
        / (pochhammer(1 - e.beta1 + q, n) * pochhammer(1 - e.beta2 + q, n))
    )


def a_table(e: ExponentData, c: CharacterIndex, n_max: int) -> list[Fraction]:
    q = c.q
    out = [Fraction(1)]
    for n in range(n_max):
        out.append(
            out[-1]
            * (e.alpha1 + q + n)
            * (e.alpha2 + q + n)
            / ((1 - e.beta1 + q + n) * (1 - e.beta2 + q + n))
        )
    return out


def C_m(p: PolynomialPair, e: ExponentData, c: CharacterIndex, m: int) -> Fraction:
    if m < 1:
        raise ValueError("m must be positive")
    comb = p.combination(c.q, m)
    if not comb:
        return Fraction(0)
    table = a_table(e, c, m + comb[-1][0])
    return sum((w * table[m + i] for i, w in comb), Fraction(0))


def im_gamma_spec(e: ExponentData, c: CharacterIndex) -> GammaProductSpec:
    q = c.q
    return GammaProductSpec((e.alpha1 + q, e.alpha2 + q), (1 - e.beta1 + q, 1 - e.beta2 + q))


def period_gamma_spec(e: ExponentData, c: CharacterIndex) -> GammaProductSpec:
    q = c.q
    return GammaProductSpec((q + e.alpha1, q + e.alpha2), (q - e.beta1, q - e.beta2))


def I_m(p: PolynomialPair, e: ExponentData, c: CharacterIndex, m: int, prec: int = DEFAULT_PREC) -> BigValue:
    """Closed form C_m * Gamma(a1+q, a2+q / 1-b1+q, 1-b2+q)."""
    _require_main(e, c)
    cm = C_m(p, e, c, m)
    if cm == 0:
        return BigValue.exact(0, prec)
    return cm * gamma_product(im_gamma_spec(e, c), prec)


def find_nonvanishing_m(p: PolynomialPair, e: ExponentData, c: CharacterIndex, m_max: int = 50) -> int:
    if p.is_zero():
        raise ValueError("polynomial pair is identically zero")
    for m in range(1, m_max + 1):
        if C_m(p, e, c, m) != 0:
            return m
    raise ExhaustedSearch(f"C_m = 0 for all m <= {m_max}")


def moment_vector(e: ExponentData, c: CharacterIndex, i: int, r: int, table=None) -> list[Fraction]:
    """e_i = (a_{i+1}, ..., a_{i+r}, (i+1) a_{i+1}, ..., (i+r) a_{i+r})."""
    table = table or a_table(e, c, i + r)
    first = [table[i + j] for j in range(1, r + 1)]
    return first + [(i + j) * table[i + j] for j in range(1, r + 1)]


def exact_determinant(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    M = [list(r) for r in rows]
    n = len(M)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        for r in range(col + 1, n):
            f = M[r][col] / M[col][col]
            if f:
                for k in range(col, n):
                    M[r][k] -= f * M[col][k]
    return det


def moment_determinant(e: ExponentData, c: CharacterIndex, m: int, r: int) -> Fraction:
    """det of the rows e_{m+1}, ..., e_{m+2r}."""
    table = a_table(e, c, m + 3 * r)
    rows = [moment_vector(e, c, m + k, r, table) for k in range(1, 2 * r + 1)]
    return exact_determinant(rows)


def hodge_type(e: ExponentData, c: CharacterIndex) -> int:
    q = c.q
    h = (
        1
        + frac_part(q + e.alpha1)
        + frac_part(q + e.alpha2)
        - frac_part(q - e.beta1)
        - frac_part(q - e.beta2)
    )
    assert h.denominator == 1
    return int(h)


def dual_data(e: ExponentData, c: CharacterIndex) -> tuple[ExponentData, CharacterIndex]:
    """(1-q, -alpha mod 1, -beta mod 1), renormalized to sum 1."""
    return e.dual(), c.dual()


@dataclass(frozen=True)
class PeriodResult:
    gamma_spec: GammaProductSpec
    canonical_spec: GammaProductSpec
    recurrence_factor: Fraction
    value: BigValue
    raw_value: BigValue
    hodge_type: int
    im_conversion_factor: Fraction

    def to_json(self, digits: int = 40) -> dict:
        return {
            "gamma_spec": self.gamma_spec.to_json(),
            "canonical_spec": self.canonical_spec.to_json(),
            "recurrence_factor": str(self.recurrence_factor),
            "value_imag": self.value.imag.to_decimal(digits),
            "raw_value_imag": self.raw_value.imag.to_decimal(digits),
            "value_err": self.value.err,
            "precision_bits": self.value.prec,
            "hodge_type": self.hodge_type,
            "im_conversion_factor": str(self.im_conversion_factor),
            "normalization": "2*pi*i times the Gamma-product with arguments in (0, 1]; "
            "fixed only up to an algebraic factor",
        }


def two_pi_i(prec: int) -> BigValue:
    ctx = get_context(prec)
    return BigValue(ctx.mpc(0, 2 * ctx.pi), prec, 2.0 ** (2 - prec))


def period_value(e: ExponentData, c: CharacterIndex, prec: int = DEFAULT_PREC) -> PeriodResult:
    """2 pi i Gamma(q+a1, q+a2 / q-b1, q-b2), with arguments moved into (0, 1).

    ``value`` uses the canonical arguments; ``raw_value`` uses the stored
    representatives; raw_value = recurrence_factor * value.
    ``im_conversion_factor`` is the rational r with Gamma-product of I_m
    equal to r times the raw Gamma-product.
    """
    _require_main(e, c)
    raw = period_gamma_spec(e, c)
    canon, factor = reduce_to_unit_interval(raw)
    tpi = two_pi_i(prec)
    q = c.q
    value = tpi * gamma_product(canon, prec)
    return PeriodResult(
        gamma_spec=raw,
        canonical_spec=canon,
        recurrence_factor=factor,
        value=value,
        raw_value=factor * value,
        hodge_type=hodge_type(e, c),
        im_conversion_factor=1 / ((q - e.beta1) * (q - e.beta2)),
    )


@dataclass(frozen=True)
class DualityResult:
    P: BigValue
    P_dual: BigValue
    sine_factor: BigValue
    sine_factor_exact: Fraction | None
    residual: BigValue
    symbolic_zero: bool


def sine_factor_numerator_denominator(e: ExponentData, c: CharacterIndex) -> tuple[CyclotomicNumber, CyclotomicNumber]:
    q = c.q
    num = sin_pi_product(frac_part(q - e.beta1), frac_part(q - e.beta2))
    den = sin_pi_product(frac_part(q + e.alpha1), frac_part(q + e.alpha2))
    return num, den


def sine_factor_exact(e: ExponentData, c: CharacterIndex) -> Fraction | None:
    """The sine factor if it is rational (verified in the cyclotomic field), else None."""
    num, den = sine_factor_numerator_denominator(e, c)
    approx = complex(num.value(128).value) / complex(den.value(128).value)
    cand = Fraction(approx.real).limit_denominator(10**6)
    return cand if (num - cand * den).is_zero() else None


def _reflection_pairs_match(e: ExponentData, c: CharacterIndex) -> bool:
    """Canonical arguments of P and P' pair up as x, 1-x, so P P' is a sine ratio identically."""
    canon = reduce_to_unit_interval(period_gamma_spec(e, c))[0]
    ed, cd = dual_data(e, c)
    canon_d = reduce_to_unit_interval(period_gamma_spec(ed, cd))[0]
    return sorted(1 - x for x in canon.numerator) == sorted(canon_d.numerator) and sorted(
        1 - x for x in canon.denominator
    ) == sorted(canon_d.denominator)


def duality_check(e: ExponentData, c: CharacterIndex, prec: int = DEFAULT_PREC) -> DualityResult:
    ed, cd = dual_data(e, c)
    _require_main(ed, cd)
    P = period_value(e, c, prec).value
    Pd = period_value(ed, cd, prec).value
    ctx = get_context(prec)
    q = c.q

    def s(x):
        x = frac_part(x)
        return BigValue(ctx.sinpi(ctx.mpf(x.numerator) / x.denominator), prec, 2.0 ** (1 - prec))

    sf = (s(q - e.beta1) * s(q - e.beta2)) / (s(q + e.alpha1) * s(q + e.alpha2))
    tpi = two_pi_i(prec)
    residual = P * Pd - tpi * tpi * sf
    return DualityResult(P, Pd, sf, sine_factor_exact(e, c), residual, _reflection_pairs_match(e, c))
