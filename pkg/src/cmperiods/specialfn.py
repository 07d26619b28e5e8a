"""Gamma, log-Gamma, digamma, Beta and Gamma-product evaluation.

Gamma and log-Gamma are delegated to mpmath evaluated with guard bits and
then rounded; the digamma closed form at rationals is Gauss's theorem and is
evaluated independently of mpmath's digamma.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .bigvalue import DEFAULT_PREC, BigValue, get_context, to_mp
from .errors import PoleError
from .params import as_fraction, frac_part

GUARD = 32

Arg = Union[int, Fraction, BigValue]


def _is_pole(x) -> bool:
    if isinstance(x, BigValue):
        ctx = x.ctx
        v = x.value
        if abs(ctx.im(v)) > x.err:
            return False
        re = ctx.re(v)
        n = ctx.nint(re)
        return n <= 0 and abs(re - n) <= max(x.err, 2.0 ** (-x.prec + 4))
    x = as_fraction(x)
    return x.denominator == 1 and x <= 0


def _round(v, ctx):
    # unary plus rounds to the target context precision
    return +ctx.convert(v)


def gamma(x: Arg, prec: int = DEFAULT_PREC) -> BigValue:
    """Gamma function with error bound 2**(1-prec)*|value| plus input propagation."""
    if _is_pole(x):
        raise PoleError(f"Gamma has a pole at {x}", x)
    if isinstance(x, BigValue):
        prec = x.prec
    hi = get_context(prec + GUARD)
    lo = get_context(prec)
    xv = to_mp(x, hi)
    g = hi.gamma(xv)
    val = _round(g, lo)
    err = 2.0 ** (1 - prec) * float(abs(val))
    if isinstance(x, BigValue) and x.err:
        # |Gamma'| = |Gamma * psi|
        err += float(abs(g * hi.digamma(xv))) * x.err
    return BigValue(val, prec, err)


def rgamma(x: Arg, prec: int = DEFAULT_PREC) -> BigValue:
    """1/Gamma(x); zero at the poles of Gamma."""
    if isinstance(x, BigValue):
        prec = x.prec
    hi = get_context(prec + GUARD)
    lo = get_context(prec)
    val = _round(hi.rgamma(to_mp(x, hi)), lo)
    return BigValue(val, prec, 2.0 ** (1 - prec) * float(abs(val)))


def loggamma(x: Arg, prec: int = DEFAULT_PREC) -> BigValue:
    if _is_pole(x):
        raise PoleError(f"log-Gamma has a pole at {x}", x)
    if isinstance(x, BigValue):
        prec = x.prec
    hi = get_context(prec + GUARD)
    lo = get_context(prec)
    val = _round(hi.loggamma(to_mp(x, hi)), lo)
    err = 2.0 ** (1 - prec) * max(1.0, float(abs(val)))
    return BigValue(val, prec, err)


@dataclass(frozen=True)
class LogSineTerm:
    """The term 2*cos(2*pi*n*p/q) * log(sin(pi*n/q))."""

    n: int
    p: int
    q: int


@dataclass(frozen=True)
class DigammaClosedForm:
    """psi(x) = e*gamma_E + r + log_coeff*log(2q) + cot_coeff*pi*cot(pi*cot_arg) + sum of log-sine terms.

    For x a positive integer only the first two pieces are present.
    """

    x: Fraction
    euler_coeff: Fraction
    rational: Fraction
    log_coeff: Fraction
    log_arg: int
    cot_coeff: Fraction
    cot_arg: Fraction
    log_sine_terms: tuple[LogSineTerm, ...]

    def evaluate(self, prec: int = DEFAULT_PREC) -> BigValue:
        ctx = get_context(prec + GUARD)
        lo = get_context(prec)
        s = self.euler_coeff * ctx.euler + to_mp(self.rational, ctx)
        if self.log_coeff:
            s += to_mp(self.log_coeff, ctx) * ctx.log(self.log_arg)
        if self.cot_coeff:
            s += to_mp(self.cot_coeff, ctx) * ctx.pi * ctx.cot(ctx.pi * to_mp(self.cot_arg, ctx))
        for t in self.log_sine_terms:
            s += 2 * ctx.cospi(ctx.mpf(2 * t.n * t.p) / t.q) * ctx.log(ctx.sinpi(ctx.mpf(t.n) / t.q))
        terms = 4 + len(self.log_sine_terms)
        val = _round(s, lo)
        return BigValue(val, prec, terms * 2.0 ** (-prec) * max(1.0, float(abs(val))))

    def describe(self) -> str:
        parts = [f"{self.euler_coeff}*gamma"]
        if self.rational:
            parts.append(str(self.rational))
        if self.log_coeff:
            parts.append(f"{self.log_coeff}*log({self.log_arg})")
        if self.cot_coeff:
            parts.append(f"{self.cot_coeff}*pi*cot(pi*{self.cot_arg})")
        for t in self.log_sine_terms:
            parts.append(f"2*cos(2*pi*{t.n * t.p}/{t.q})*log(sin(pi*{t.n}/{t.q}))")
        return " + ".join(parts)


def digamma_closed_form(x) -> DigammaClosedForm:
    """Gauss's digamma theorem at a positive rational, plus the shift recurrence."""
    x = as_fraction(x)
    if x.denominator == 1 and x <= 0:
        raise PoleError(f"digamma has a pole at {x}", x)
    if x <= 0:
        raise ValueError("closed form implemented for x > 0 only")
    x0 = frac_part(x)
    if x0 == 0:
        x0 = Fraction(1)
    shift = int(x - x0)
    rational = sum((1 / (x0 + j) for j in range(shift)), Fraction(0))
    if x0 == 1:
        return DigammaClosedForm(x, Fraction(-1), rational, Fraction(0), 1, Fraction(0), Fraction(0), ())
    p, q = x0.numerator, x0.denominator
    terms = tuple(LogSineTerm(n, p, q) for n in range(1, (q + 1) // 2))
    return DigammaClosedForm(
        x, Fraction(-1), rational, Fraction(-1), 2 * q, Fraction(-1, 2), x0, terms
    )


def digamma(x, prec: int = DEFAULT_PREC) -> tuple[DigammaClosedForm, BigValue]:
    """Return Gauss's closed form and the numeric value (mpmath digamma)."""
    form = digamma_closed_form(x)
    hi = get_context(prec + GUARD)
    lo = get_context(prec)
    val = _round(hi.digamma(to_mp(as_fraction(x), hi)), lo)
    return form, BigValue(val, prec, 2.0 ** (1 - prec) * max(1.0, float(abs(val))))


@dataclass(frozen=True)
class GammaProductSpec:
    """prod Gamma(numerator) / prod Gamma(denominator)."""

    numerator: tuple
    denominator: tuple

    def __init__(self, numerator: Sequence, denominator: Sequence = ()):
        object.__setattr__(self, "numerator", tuple(as_fraction(x) for x in numerator))
        object.__setattr__(self, "denominator", tuple(as_fraction(x) for x in denominator))

    def poles(self) -> list[Fraction]:
        return [x for x in self.numerator + self.denominator if x.denominator == 1 and x <= 0]

    def to_json(self) -> dict:
        return {
            "numerator": [str(x) for x in self.numerator],
            "denominator": [str(x) for x in self.denominator],
        }


def gamma_product(spec: GammaProductSpec, prec: int = DEFAULT_PREC) -> BigValue:
    for x in spec.numerator + spec.denominator:
        if x.denominator == 1 and x <= 0:
            raise PoleError(f"Gamma-product argument {x} is a nonpositive integer", x)
    out = BigValue.exact(1, prec)
    for x in spec.numerator:
        out = out * gamma(x, prec)
    for x in spec.denominator:
        out = out / gamma(x, prec)
    return out


def beta(a, b, prec: int = DEFAULT_PREC) -> BigValue:
    a, b = as_fraction(a), as_fraction(b)
    return gamma_product(GammaProductSpec((a, b), (a + b,)), prec)


def _shift_factor(y: Fraction) -> tuple[Fraction, Fraction]:
    """(y0, f) with y0 in (0, 1] and Gamma(y) = f * Gamma(y0)."""
    y0 = frac_part(y)
    if y0 == 0:
        y0 = Fraction(1)
    n = int(y - y0)
    if n >= 0:
        f = Fraction(1)
        for j in range(n):
            f *= y0 + j
    else:
        f = Fraction(1)
        for j in range(-n):
            f *= y + j
        f = 1 / f
    return y0, f


def reduce_to_unit_interval(spec: GammaProductSpec) -> tuple[GammaProductSpec, Fraction]:
    """Move every argument into (0, 1]; returns (canonical spec, rational factor).

    The original product equals factor * canonical product.
    """
    if spec.poles():
        raise PoleError(f"Gamma-product has pole arguments {spec.poles()}", spec.poles()[0])
    factor = Fraction(1)
    num, den = [], []
    for y in spec.numerator:
        y0, f = _shift_factor(y)
        num.append(y0)
        factor *= f
    for y in spec.denominator:
        y0, f = _shift_factor(y)
        den.append(y0)
        factor /= f
    return GammaProductSpec(num, den), factor


def reflection_residual(x, prec: int = DEFAULT_PREC) -> BigValue:
    """Gamma(x)Gamma(1-x)sin(pi x)/pi - 1."""
    x = as_fraction(x)
    ctx = get_context(prec)
    g = gamma(x, prec) * gamma(1 - x, prec)
    s = BigValue(ctx.sinpi(to_mp(x, ctx)) / ctx.pi, prec, 2.0 ** (1 - prec))
    return g * s - 1


__all__ = [
    "GammaProductSpec",
    "DigammaClosedForm",
    "LogSineTerm",
    "beta",
    "digamma",
    "digamma_closed_form",
    "gamma",
    "gamma_product",
    "loggamma",
    "reduce_to_unit_interval",
    "reflection_residual",
    "rgamma",
]

