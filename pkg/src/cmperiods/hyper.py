"""Generalized hypergeometric series, Gauss sums at 1, local basis functions
and the logarithmic expansion of 2F1(a, b; a+b; t) at t = 1.

The pFq engine is self-contained: terms are generated from exact integer
ratios, the tail inside the unit disk is bounded rigorously, and at x = 1
(p = q+1, positive margin) the tail is summed through its asymptotic
expansion in 1/n (log-Gamma Bernoulli coefficients plus Euler-Maclaurin).
It does not use any contiguous relation, so it can serve as an oracle for
them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath

from .bigvalue import DEFAULT_PREC, BigValue, get_context, to_mp
from .errors import DivergentSeries, NonConvergence, PoleError
from .params import ExponentData, as_fraction, pochhammer
from .specialfn import beta, digamma_closed_form, gamma, rgamma

GUARD = 24
MAX_TERMS = 3_000_000


@dataclass(frozen=True)
class HyperParams:
    """Parameters of pFq(upper; lower; x)."""

    upper: tuple
    lower: tuple
    x: object = Fraction(1)

    def __init__(self, upper: Sequence, lower: Sequence, x=Fraction(1)):
        object.__setattr__(self, "upper", tuple(as_fraction(a) for a in upper))
        object.__setattr__(self, "lower", tuple(as_fraction(b) for b in lower))
        if not isinstance(x, BigValue):
            try:
                x = as_fraction(x)
            except Exception:
                x = BigValue.exact(x)
        object.__setattr__(self, "x", x)

    @property
    def margin(self) -> Fraction:
        return sum(self.lower, Fraction(0)) - sum(self.upper, Fraction(0))

    def at(self, x) -> "HyperParams":
        return HyperParams(self.upper, self.lower, x)

    def to_json(self) -> dict:
        return {
            "upper": [str(a) for a in self.upper],
            "lower": [str(b) for b in self.lower],
            "x": str(self.x) if isinstance(self.x, Fraction) else self.x.to_decimal(30),
        }


def _nonpos_int(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


def _termination_index(upper) -> int | None:
    idx = [int(-a) for a in upper if _nonpos_int(a)]
    return min(idx) if idx else None


class _Ratio:
    """Integer representation of the term ratio t_{n+1}/t_n without x."""

    def __init__(self, upper, lower):
        # (a + n) = (A + n*D) / D
        self.up = [(a.numerator, a.denominator) for a in upper]
        self.lo = [(b.numerator, b.denominator) for b in lower] + [(1, 1)]
        cu = 1
        for _, d in self.up:
            cu *= d
        cl = 1
        for _, d in self.lo:
            cl *= d
        self.const_num = cl
        self.const_den = cu

    def __call__(self, n: int) -> tuple[int, int]:
        num = self.const_num
        for a, d in self.up:
            num *= a + n * d
        den = self.const_den
        for b, d in self.lo:
            den *= b + n * d
        return num, den


def _check_poles(upper, lower):
    stop = _termination_index(upper)
    for b in lower:
        if _nonpos_int(b) and (stop is None or stop > int(-b)):
            raise PoleError(f"lower parameter {b} is a nonpositive integer", b)
    return stop


def _x_parts(x, ctx):
    """(mpmath value, exact Fraction or None, abs error of x)."""
    if isinstance(x, BigValue):
        return to_mp(x.value, ctx), None, x.err
    x = as_fraction(x)
    return to_mp(x, ctx), x, 0.0


def pfq(params: HyperParams, prec: int = DEFAULT_PREC, max_terms: int = MAX_TERMS) -> BigValue:
    """Evaluate pFq with an error bound.

    Inside the unit disk the bound is rigorous. At x = 1 with p = q+1 the
    tail bound is the last retained term of the asymptotic tail expansion.
    """
    upper, lower, x = params.upper, params.lower, params.x
    stop = _check_poles(upper, lower)
    p, q = len(upper), len(lower)
    lo_ctx = get_context(prec)
    xv0, xf, xerr = _x_parts(x, lo_ctx)
    if xv0 == 0:
        return BigValue.exact(1, prec)
    if stop is not None:
        return _finite_sum(upper, lower, x, stop, prec)
    if p > q + 1:
        raise DivergentSeries(f"{p}F{q} diverges for x != 0")
    ax = float(abs(xv0))
    if p == q + 1:
        if xf == 1:
            if params.margin <= 0:
                raise DivergentSeries(f"margin {params.margin} <= 0 at x = 1")
            return _sum_at_one(upper, lower, prec)
        if ax >= 1:
            raise DivergentSeries(f"|x| = {ax} >= 1 for {p}F{q}")
    wp = prec + GUARD
    for _ in range(4):
        res, spread = _sum_inside(upper, lower, x, wp, prec, max_terms)
        if spread <= 2 ** 12:
            return res
        wp = prec + GUARD + int(math.log2(spread)) + 8
    return res


def _finite_sum(upper, lower, x, stop, prec):
    # terminating: exact rational when x is rational
    if not isinstance(x, BigValue):
        s = Fraction(0)
        t = Fraction(1)
        for n in range(stop + 1):
            s += t
            r = Fraction(1)
            for a in upper:
                r *= a + n
            for b in lower:
                r /= b + n
            t *= r * x / (n + 1)
        return BigValue.exact(s, prec)
    ctx = get_context(prec + GUARD)
    xv = to_mp(x.value, ctx)
    ratio = _Ratio(upper, lower)
    t = ctx.mpf(1)
    s = ctx.mpf(0)
    absum = 0.0
    for n in range(stop + 1):
        s += t
        absum += float(abs(t))
        num, den = ratio(n)
        t = t * xv * num / den
    lo = get_context(prec)
    val = +lo.convert(s)
    err = (stop + 2) * absum * 2.0 ** (-prec - GUARD) + 2.0 ** (-prec) * float(abs(val))
    err += x.err * stop * absum / max(float(abs(xv)), 1e-300)
    return BigValue(val, prec, err)


def _tail_ratio_bound(upper, lower, n, ax) -> float:
    """Bound on |t_{k+1}/t_k| for all k >= n (requires a+n > 0, b+n > 0)."""
    lows = sorted(list(lower) + [Fraction(1)])
    ups = sorted(upper)
    rho = ax
    # pair largest uppers with largest lowers; surplus lowers contribute 1/(b+n)
    lows_rev = lows[::-1]
    for i, a in enumerate(sorted(ups, reverse=True)):
        b = lows_rev[i]
        rho *= max(float(a + n) / float(b + n), 1.0)
    for b in lows_rev[len(ups):]:
        rho /= float(b + n)
    return rho


def _sum_inside(upper, lower, x, wp, prec, max_terms):
    ctx = get_context(wp)
    xv, xf, xerr = _x_parts(x, ctx)
    ax = float(abs(xv))
    ratio = _Ratio(upper, lower)
    if xf is not None:
        xn, xd = xf.numerator, xf.denominator
    shift = math.ceil(max([0.0] + [float(-v) for v in list(upper) + list(lower)])) + 1
    t = ctx.mpf(1)
    s = ctx.mpf(0)
    absum = 0.0
    dsum = 0.0
    eps = 2.0 ** (-wp)
    n = 0
    while True:
        s += t
        at = float(abs(t))
        absum += at
        dsum += n * at
        num, den = ratio(n)
        if xf is not None:
            t = t * (num * xn) / (den * xd)
        else:
            t = t * xv * num / den
        n += 1
        if n > shift and n % 8 == 0:
            rho = _tail_ratio_bound(upper, lower, n, ax)
            if rho < 1:
                at = float(abs(t))
                tail = at / (1 - rho)
                if tail <= eps * max(float(abs(s)), 1e-300) or at == 0:
                    break
        if n > max_terms:
            raise NonConvergence(f"pFq series did not converge within {max_terms} terms")
    s += t
    absum += float(abs(t))
    lo = get_context(prec)
    val = +lo.convert(s)
    mag = max(float(abs(val)), 1e-300)
    err = tail + 2 * n * eps * absum + 2.0 ** (-prec) * mag
    if xerr:
        err += xerr * dsum / max(ax, 1e-300)
    return BigValue(val, prec, err), absum / mag


@lru_cache(maxsize=8)
def _bernoulli_fractions(count: int) -> tuple:
    return tuple((int(p), int(q)) for p, q in (mpmath.bernfrac(j) for j in range(count + 1)))


@lru_cache(maxsize=256)
def _tail_coefficients(upper, lower, W, kmax):
    """Fixed-point (scale 2**W) coefficients tau_m and e_k of the asymptotic tail.

    With t_n ~ K n^(-1-s) E(1/n), E = exp(sum d_k w^k), the tail from N
    equals t_N * N * (sum tau_m N^-m) / (sum e_k N^-k). The d_k come from
    the Bernoulli-polynomial expansion of log-Gamma; tau adds the
    Euler-Maclaurin corrections for sum_{n >= N} n^(-1-s-k).
    """
    one = 1 << W
    lows = list(lower) + [Fraction(1)]
    sig = sum(lower, Fraction(0)) - sum(upper, Fraction(0)) + 1
    bern = _bernoulli_fractions(kmax + 2)
    bfx = [(p << W) // q for p, q in bern]
    # power-sum differences P_r = sum a^r - sum b^r
    P = [(len(upper) - len(lows)) * one]
    for r in range(1, kmax + 2):
        acc = 0
        for a in upper:
            acc += (a.numerator ** r << W) // a.denominator ** r
        for b in lows:
            acc -= (b.numerator ** r << W) // b.denominator ** r
        P.append(acc)
    d = [0]
    for k in range(1, kmax + 1):
        m = k + 1
        acc = sum(math.comb(m, j) * bfx[j] * P[m - j] for j in range(m + 1)) >> W
        dk = acc // (k * (k + 1))
        d.append(dk if k % 2 else -dk)
    e = [one]
    for n in range(1, kmax + 1):
        e.append((sum(k * d[k] * e[n - k] for k in range(1, n + 1)) >> W) // n)
    sn, sd = sig.numerator, sig.denominator
    tau = []
    for m in range(kmax + 1):
        v = e[m] * sd // (sn + (m - 1) * sd)
        if m >= 1:
            v += e[m - 1] // 2
        tau.append(v)
    # e_i * B_2j/(2j)! * (sig+i)_(2j-1), as integer ratios
    for i in range(kmax + 1):
        pn, pd = sn + i * sd, sd
        fact = 2
        j = 1
        while i + 2 * j <= kmax:
            bp, bq = bern[2 * j]
            tau[i + 2 * j] += e[i] * bp * pn // (bq * fact * pd)
            pn *= (sn + (i + 2 * j - 1) * sd) * (sn + (i + 2 * j) * sd)
            pd *= sd * sd
            fact *= (2 * j + 1) * (2 * j + 2)
            j += 1
    return tuple(tau), tuple(e)


def _sum_at_one(upper, lower, prec):
    wp = prec + GUARD
    pmax = max([1.0] + [abs(float(v)) for v in list(upper) + list(lower)])
    N = int(wp + 24 * pmax + 32)
    for _ in range(5):
        res = _sum_at_one_with(upper, lower, prec, wp, N, pmax)
        if res is not None:
            return res
        N *= 2
    raise NonConvergence("asymptotic tail expansion at x = 1 did not settle")


def _sum_at_one_with(upper, lower, prec, wp, N, pmax):
    ctx = get_context(wp)
    ratio = _Ratio(upper, lower)
    t = ctx.mpf(1)
    s = ctx.mpf(0)
    absum = 0.0
    for n in range(N):
        s += t
        absum += float(abs(t))
        num, den = ratio(n)
        t = t * num / den
    tN = t
    W = wp + 40
    kmax = int(wp * math.log(2) / math.log(N / (2 * pmax))) + 16
    tau, e = _tail_coefficients(upper, lower, W, kmax)
    num = 0
    den = 0
    powN = 1
    prev_pair = None
    last = None
    converged = False
    for m in range(kmax + 1):
        term = tau[m] // powN
        num += term
        den += e[m] // powN
        mag = max(abs(term), abs(last) if last is not None else 0)
        if m >= 6 and m % 2 == 0:
            if abs(term) <= (abs(num) >> wp) and abs(last) <= (abs(num) >> wp):
                converged = True
                break
            if prev_pair is not None and mag > prev_pair:
                return None
            prev_pair = mag
        last = term
        powN *= N
    if not converged:
        return None
    fnum = ctx.ldexp(ctx.mpf(num), -W)
    fden = ctx.ldexp(ctx.mpf(den), -W)
    tail = tN * N * fnum / fden
    total = s + tail
    lo = get_context(prec)
    val = +lo.convert(total)
    trunc = float(abs(tN)) * N * (2.0 * abs(last) + kmax) / float(abs(den))
    err = trunc + 2 * N * 2.0 ** (-wp) * (absum + float(abs(tail))) + 2.0 ** (-prec) * float(abs(val))
    return BigValue(val, prec, err)


def hyp(upper: Sequence, lower: Sequence, x, prec: int = DEFAULT_PREC) -> BigValue:
    return pfq(HyperParams(upper, lower, x), prec)


def euler_at_1(a, b, c, prec: int = DEFAULT_PREC) -> BigValue:
    """Gauss's sum 2F1(a, b; c; 1) = Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b))."""
    a, b, c = (as_fraction(v) for v in (a, b, c))
    if _nonpos_int(c):
        raise PoleError(f"lower parameter {c} is a nonpositive integer", c)
    if c - a - b <= 0:
        raise DivergentSeries(f"c-a-b = {c - a - b} <= 0")
    return gamma(c, prec) * gamma(c - a - b, prec) * rgamma(c - a, prec) * rgamma(c - b, prec)


def _power(t: BigValue, expo: Fraction, prec: int) -> BigValue:
    if expo == 0:
        return BigValue.exact(1, prec)
    ctx = get_context(prec)
    v = ctx.power(t.value, to_mp(expo, ctx))
    err = float(abs(v)) * (2.0 ** (1 - prec) + float(abs(expo)) * t.err / float(abs(t.value)))
    return BigValue(v, prec, err)


def _as_big(t, prec) -> BigValue:
    return t if isinstance(t, BigValue) else BigValue.exact(t, prec)


def basis_F1_F2(e: ExponentData, t, prec: int = DEFAULT_PREC) -> tuple[BigValue, BigValue]:
    """Local solutions t^a1 2F1(a, b; 1; 1-t) and t^a1 2F1(a, b; 1+a1-a2; t).

    Accepts t in (0, 1] for F1 and (0, 1) for F2; a1 = a2 gives lower
    parameter 1, which is evaluated (the two functions then share their
    exponent at 0 but are still well-defined).
    """
    tb = _as_big(t, prec)
    c2 = e.c_lower
    if _nonpos_int(c2):
        raise PoleError(f"lower parameter 1+alpha1-alpha2 = {c2} is a nonpositive integer", c2)
    pw = _power(tb, e.alpha1, prec)
    one_minus = (1 - as_fraction(t)) if not isinstance(t, BigValue) else (1 - tb)
    f1 = pw * pfq(HyperParams((e.a, e.b), (1,), one_minus), prec)
    f2 = pw * pfq(HyperParams((e.a, e.b), (c2,), t), prec)
    return f1, f2


@dataclass(frozen=True)
class LogExpansion:
    """2F1(a, b; a+b; t) = B(a,b)^-1 sum_n (a)_n (b)_n / n!^2 (k_n - log(1-t)) (1-t)^n."""

    a: Fraction
    b: Fraction
    order: int
    coefficients: tuple  # k_n as BigValue
    weights: tuple  # (a)_n (b)_n / n!^2, exact
    inv_beta: BigValue
    prec: int

    def evaluate(self, t=None, one_minus_t=None) -> BigValue:
        """Truncated expansion; pass 1-t directly to avoid cancellation."""
        if one_minus_t is None:
            if t is None:
                raise ValueError("need t or 1-t")
            one_minus_t = 1 - _as_big(t, self.prec) if isinstance(t, BigValue) else 1 - as_fraction(t)
        u = _as_big(one_minus_t, self.prec)
        ctx = get_context(self.prec)
        logu = BigValue(ctx.log(u.value), self.prec, 2.0 ** (1 - self.prec) + u.err / float(abs(u.value)))
        acc = BigValue.exact(0, self.prec)
        pw = BigValue.exact(1, self.prec)
        for k, w in zip(self.coefficients, self.weights):
            acc = acc + (k - logu) * w * pw
            pw = pw * u
        return acc * self.inv_beta

    def log_coefficient(self, n: int) -> BigValue:
        """Coefficient of log(1-t)(1-t)^n."""
        return -self.inv_beta * self.weights[n]


def log_expansion_at_1(a, b, N: int, prec: int = DEFAULT_PREC) -> LogExpansion:
    a, b = as_fraction(a), as_fraction(b)
    if a <= 0 or b <= 0:
        raise ValueError("need a, b > 0")
    ks = []
    ws = []
    for n in range(N):
        psi_n1 = digamma_closed_form(n + 1).evaluate(prec)
        psi_a = digamma_closed_form(a + n).evaluate(prec)
        psi_b = psi_a if a == b else digamma_closed_form(b + n).evaluate(prec)
        ks.append(2 * psi_n1 - psi_a - psi_b)
        ws.append(pochhammer(a, n) * pochhammer(b, n) / math.factorial(n) ** 2)
    inv_beta = 1 / beta(a, b, prec)
    return LogExpansion(a, b, N, tuple(ks), tuple(ws), inv_beta, prec)
