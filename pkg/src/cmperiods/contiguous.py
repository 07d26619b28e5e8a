"""Contiguous relations for 3F2 at (and near) 1.

``F(q)`` below always means 3F2(a, b, q; c, q+1; 1) and the three-term function
is ``G(x) = 3F2(1, c, q; a, b; x)`` viewed either as a function of q or of a.
Relation checks return residuals computed with the series engine of
:mod:`cmperiods.hyper`, which does not use any of these identities.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .bigvalue import DEFAULT_PREC, BigValue
from .errors import DivergentSeries, PoleError
from .hyper import HyperParams, pfq
from .params import CharacterIndex, ExponentData, as_fraction
from .specialfn import GammaProductSpec, gamma, gamma_product, rgamma


def _nonpos_int(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


def gamma_ratio(num, den, prec: int = DEFAULT_PREC) -> BigValue:
    """Gamma(num)/Gamma(den) that evaluates to 0 when a denominator argument is a pole."""
    out = BigValue.exact(1, prec)
    for x in num:
        out = out * gamma(x, prec)
    for x in den:
        out = out * rgamma(x, prec)
    return out


@dataclass(frozen=True)
class ThreeF2At1:
    """3F2(a, b, q; c, q+1; 1)."""

    a: Fraction
    b: Fraction
    c: Fraction
    q: Fraction

    def __post_init__(self):
        for k in ("a", "b", "c", "q"):
            object.__setattr__(self, k, as_fraction(getattr(self, k)))

    @property
    def margin(self) -> Fraction:
        return self.c + 1 - self.a - self.b

    @property
    def params(self) -> HyperParams:
        return HyperParams((self.a, self.b, self.q), (self.c, self.q + 1), 1)

    def value(self, prec: int = DEFAULT_PREC) -> BigValue:
        if self.margin <= 0:
            raise DivergentSeries(f"margin {self.margin} <= 0")
        return pfq(self.params, prec)

    def normalized(self, prec: int = DEFAULT_PREC) -> BigValue:
        """Gamma(c+1-a, c+1-b / c, c+1-a-b) * value."""
        a, b, c = self.a, self.b, self.c
        return gamma_ratio((c + 1 - a, c + 1 - b), (c, c + 1 - a - b), prec) * self.value(prec)


@dataclass(frozen=True)
class QStepResult:
    A: Fraction
    B: Fraction
    rhs: BigValue
    lhs: BigValue
    residual: BigValue


def q_step_coefficients(a, b, c, q) -> tuple[Fraction, Fraction]:
    a, b, c, q = (as_fraction(v) for v in (a, b, c, q))
    if q + 1 == 0:
        raise PoleError("q + 1 = 0", q)
    return (q + 1 - a) * (q + 1 - b) / (q + 1), q + 1 - c


def q_step_relation(a, b, c, q, prec: int = DEFAULT_PREC) -> QStepResult:
    """A*F(q+1) - B*F(q) against Gamma(c, c+1-a-b / c-a, c-b)."""
    a, b, c, q = (as_fraction(v) for v in (a, b, c, q))
    if c + 1 <= a + b:
        raise DivergentSeries(f"need c+1 > a+b, got margin {c + 1 - a - b}")
    for lo in (c, q + 1, q + 2):
        if _nonpos_int(lo):
            raise PoleError(f"lower parameter {lo} is a nonpositive integer", lo)
    A, B = q_step_coefficients(a, b, c, q)
    f0 = ThreeF2At1(a, b, c, q).value(prec)
    f1 = ThreeF2At1(a, b, c, q + 1).value(prec)
    lhs = A * f1 - B * f0
    rhs = gamma_ratio((c, c + 1 - a - b), (c - a, c - b), prec)
    return QStepResult(A, B, rhs, lhs, lhs - rhs)


def three_term_function(a, b, c, q, x, prec: int = DEFAULT_PREC) -> BigValue:
    """G(x) = 3F2(1, c, q; a, b; x)."""
    return pfq(HyperParams((1, c, q), (a, b), x), prec)


def _is_one(x) -> bool:
    return not isinstance(x, BigValue) and as_fraction(x) == 1


def three_term(a, b, c, q, variant: str, x=Fraction(1), prec: int = DEFAULT_PREC) -> BigValue:
    """Residual of the three-term relation ("q-shift" or "a-shift")."""
    a, b, c, q = (as_fraction(v) for v in (a, b, c, q))
    at_one = _is_one(x)
    if at_one and a + b <= c + q + 2:
        raise DivergentSeries("the x = 1 forms need a+b > c+q+2")
    xb = None if at_one else (x if isinstance(x, BigValue) else BigValue.exact(as_fraction(x), prec))

    def G(aa, qq):
        return three_term_function(aa, b, c, qq, 1 if at_one else x, prec)

    rhs = (a - 1) * (b - 1)
    if variant == "q-shift":
        if at_one:
            total = (a - q - 1) * (b - q - 1) * G(a, q) + q * (a + b - c - 2 - q) * G(a, q + 1)
        else:
            total = (
                (a - q - 1) * (b - q - 1) * G(a, q)
                + q * ((a + b - 3 - 2 * q) - (c - q - 1) * xb) * G(a, q + 1)
                + q * (1 + q) * (1 - xb) * G(a, q + 2)
            )
    elif variant == "a-shift":
        if at_one:
            total = (a - 1) * (a + b - c - q - 2) * G(a - 1, q) - (a - q - 1) * (a - c - 1) * G(a, q)
        else:
            total = (
                (a - 2) * (a - 1) * (1 - xb) * G(a - 2, q)
                + (a - 1) * ((2 * a - c - q - 3) * xb - a + b + 1) * G(a - 1, q)
                - (a - q - 1) * (a - c - 1) * xb * G(a, q)
            )
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return total - rhs


@dataclass(frozen=True)
class BaileyResult:
    prefactor: BigValue
    prefactor_spec: GammaProductSpec
    transformed: HyperParams
    lhs: BigValue
    rhs: BigValue
    residual: BigValue


def bailey_transform(a, b, c, q, prec: int = DEFAULT_PREC) -> BaileyResult:
    """3F2(a,b,q; c,q+1; 1) = q Gamma(c, c+1-a-b / c+1-a, c+1-b) 3F2(1, c+1-a-b, c-q; c+1-a, c+1-b; 1)."""
    a, b, c, q = (as_fraction(v) for v in (a, b, c, q))
    if c + 1 <= a + b:
        raise DivergentSeries(f"need c+1 > a+b, got margin {c + 1 - a - b}")
    if q <= 0:
        raise ValueError("need q > 0")
    spec = GammaProductSpec((c, c + 1 - a - b), (c + 1 - a, c + 1 - b))
    pref = q * gamma_product(spec, prec)
    tr = HyperParams((1, c + 1 - a - b, c - q), (c + 1 - a, c + 1 - b), 1)
    lhs = ThreeF2At1(a, b, c, q).value(prec)
    rhs = pref * pfq(tr, prec)
    return BaileyResult(pref, spec, tr, lhs, rhs, lhs - rhs)


@dataclass(frozen=True)
class ReductionCoefficients:
    """B(a,b) K_n = p_n * B(a,b) 3F2(a, b, q+alpha1; a+b, q+alpha1+1; 1) + pprime_n."""

    n: int
    p_n: Fraction
    pprime_n: Fraction


def kn_reduce_table(e: ExponentData, c: CharacterIndex, n_max: int) -> list[ReductionCoefficients]:
    """Iterate the c = a+b case of the q-step relation exactly for n = 0..n_max.

    With G(Q) = B(a,b) 3F2(a, b, Q; a+b, Q+1; 1) the relation reads
    G(Q+1) = r(Q) [(Q+1-a-b) G(Q) + 1],  r(Q) = (Q+1)/((Q+1-a)(Q+1-b)).
    """
    a, b = e.a, e.b
    Q0 = c.q + e.alpha1
    if Q0 == 0:
        raise PoleError("q + alpha1 = 0", Q0)
    u, v = Fraction(1), Fraction(0)
    out = [ReductionCoefficients(0, u / Q0, v / Q0)]
    for n in range(n_max):
        Q = Q0 + n
        d = (Q + 1 - a) * (Q + 1 - b)
        if d == 0 or Q + 1 == 0:
            raise PoleError(f"reduction step hits a pole at Q = {Q}", Q)
        r = (Q + 1) / d
        u, v = r * (Q + 1 - a - b) * u, r * ((Q + 1 - a - b) * v + 1)
        out.append(ReductionCoefficients(n + 1, u / (Q + 1), v / (Q + 1)))
    return out


def kn_reduce(e: ExponentData, c: CharacterIndex, n: int) -> ReductionCoefficients:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return kn_reduce_table(e, c, n)[n]


@dataclass(frozen=True)
class ChainRelation:
    """k*F + k1*F1 + k2 = 0 between two normalized values."""

    k: Fraction
    k1: Fraction
    k2: Fraction
    source: tuple
    target: tuple

    def residual(self, prec: int = DEFAULT_PREC) -> BigValue:
        f = ThreeF2At1(*self.source).normalized(prec)
        f1 = ThreeF2At1(*self.target).normalized(prec)
        return self.k * f + self.k1 * f1 + self.k2


def q_chain(a, b, c, q, steps: int = 1) -> ChainRelation:
    """Relate the normalized values at q and q+steps (rational affine chain).

    The normalized q-step relation is A*N(q+1) - B*N(q) = (c-a)(c-b).
    """
    a, b, c, q = (as_fraction(v) for v in (a, b, c, q))
    if c + 1 <= a + b:
        raise DivergentSeries("need c+1 > a+b")
    # N(q+j) = u N(q) + w
    u, w = Fraction(1), Fraction(0)
    for j in range(steps):
        A, B = q_step_coefficients(a, b, c, q + j)
        if A == 0:
            raise PoleError(f"q-chain step {j} has a vanishing leading coefficient", q + j)
        u, w = B * u / A, (B * w + (c - a) * (c - b)) / A
    return ChainRelation(u, Fraction(-1), w, (a, b, c, q), (a, b, c, q + steps))


def a_chain(a, b, c, q) -> ChainRelation:
    """Relate the normalized values at (a, b, c, q) and (a, b-1, c-1, q-1).

    Through the Bailey transform the normalized value equals q*G(A) with
    G(A) = 3F2(1, C, Q; A, B; 1), A = c+1-a, B = c+1-b, C = c+1-a-b, Q = c-q;
    the move lowers A by one and fixes B, C and Q, so the x = 1 a-shift
    relation applies. Needs q > 1 for the shifted value to converge.
    """
    a, b, c, q = (as_fraction(v) for v in (a, b, c, q))
    if c + 1 <= a + b:
        raise DivergentSeries("need c+1 > a+b")
    if q <= 1:
        raise DivergentSeries("the a-chain needs q > 1")
    A, B, C, Q = c + 1 - a, c + 1 - b, c + 1 - a - b, c - q
    # (A-1)(A+B-C-Q-2) G(A-1) - (A-Q-1)(A-C-1) G(A) = (A-1)(B-1)
    # N = q G(A), N1 = (q-1) G(A-1)
    c_shift = (A - 1) * (A + B - C - Q - 2)
    c_base = -(A - Q - 1) * (A - C - 1)
    return ChainRelation(c_base / q, c_shift / (q - 1), -(A - 1) * (B - 1), (a, b, c, q), (a, b - 1, c - 1, q - 1))


def _rand_frac(rng: random.Random, lo: float, hi: float, max_den: int = 12) -> Fraction:
    d = rng.randint(1, max_den)
    return Fraction(rng.randint(int(lo * d) + 1, int(hi * d) - 1), d)


def random_tuple(rng: random.Random, kind: str) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Random (a, b, c, q) admissible for the given relation kind.

    kinds: "q-step", "bailey", "three-term-1" (x = 1 forms), "three-term-x".
    """
    while True:
        a = _rand_frac(rng, 0, 3)
        b = _rand_frac(rng, 0, 3)
        q = _rand_frac(rng, 0, 2)
        if kind in ("q-step", "bailey"):
            c = a + b - 1 + _rand_frac(rng, 0, 2)
            lows = (c, q + 1, q + 2, c + 1 - a, c + 1 - b)
        elif kind == "three-term-1":
            c = _rand_frac(rng, 0, 2)
            a, b = a + 1, b + 1
            if a + b <= c + q + 2 + Fraction(1, 20):
                continue
            lows = (a, b, a - 1)
        elif kind == "three-term-x":
            c = _rand_frac(rng, 0, 2)
            a = a + 2
            lows = (a, b, a - 1, a - 2)
        else:
            raise ValueError(kind)
        if any(_nonpos_int(x) for x in lows):
            continue
        return a, b, c, q
