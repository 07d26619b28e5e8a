"""Exact arithmetic in cyclotomic fields.

A :class:`CyclotomicNumber` is a finite sum ``sum c_r * exp(2*pi*i*r)`` with
rational ``c_r`` and exponents ``r`` in [0, 1). Zero testing reduces the
associated polynomial in a primitive N-th root modulo the cyclotomic
polynomial Phi_N.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce

from .bigvalue import DEFAULT_PREC, BigValue, get_context, to_mp


def _mod1(r) -> Fraction:
    r = Fraction(r)
    return r - math.floor(r)


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Integer polynomial division by a monic divisor; coefficients low to high."""
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        coef = num[i]
        if coef:
            quot[i - dn] = coef
            for j in range(dn + 1):
                num[i - dn + j] -= coef * den[j]
    return quot, num[:dn] or [0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of Phi_n."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p, rem = _poly_divmod(p, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(p)


class CyclotomicNumber:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for r, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                r = _mod1(r)
                clean[r] = clean.get(r, Fraction(0)) + c
                if not clean[r]:
                    del clean[r]
        self.terms = clean

    @classmethod
    def root(cls, r, coeff=1) -> "CyclotomicNumber":
        """coeff * exp(2*pi*i*r)."""
        return cls({_mod1(r): Fraction(coeff)})

    @classmethod
    def rational(cls, c) -> "CyclotomicNumber":
        return cls({Fraction(0): Fraction(c)})

    @staticmethod
    def _lift(x) -> "CyclotomicNumber":
        if isinstance(x, CyclotomicNumber):
            return x
        return CyclotomicNumber.rational(x)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for r, c in other.terms.items():
            t[r] = t.get(r, Fraction(0)) + c
        return CyclotomicNumber(t)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber({r: -c for r, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        t: dict = {}
        for r1, c1 in self.terms.items():
            for r2, c2 in other.terms.items():
                r = _mod1(r1 + r2)
                t[r] = t.get(r, Fraction(0)) + c1 * c2
        return CyclotomicNumber(t)

    __rmul__ = __mul__

    def conj(self) -> "CyclotomicNumber":
        return CyclotomicNumber({-r: c for r, c in self.terms.items()})

    @property
    def conductor(self) -> int:
        return reduce(lambda a, b: a * b // math.gcd(a, b), (r.denominator for r in self.terms), 1)

    def reduced(self) -> tuple[int, list[Fraction]]:
        """(N, remainder of the polynomial modulo Phi_N) with rational coefficients."""
        n = self.conductor
        poly = [Fraction(0)] * n
        for r, c in self.terms.items():
            poly[int(r * n)] += c
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in poly), 1)
        ipoly = [int(c * den) for c in poly]
        _, rem = _poly_divmod(ipoly, list(cyclotomic_polynomial(n)))
        return n, [Fraction(c, den) for c in rem]

    def is_zero(self) -> bool:
        if not self.terms:
            return True
        _, rem = self.reduced()
        return not any(rem)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return (self - other).is_zero()
        return NotImplemented

    def __hash__(self):
        n, rem = self.reduced()
        while rem and rem[-1] == 0 and len(rem) > 1:
            rem.pop()
        return hash((n, tuple(rem))) if any(rem) else hash(0)

    def as_rational(self) -> Fraction | None:
        """The value if it is rational, else None."""
        n, rem = self.reduced()
        if all(c == 0 for c in rem[1:]):
            return rem[0] if rem else Fraction(0)
        return None

    def value(self, prec: int = DEFAULT_PREC) -> BigValue:
        ctx = get_context(prec)
        s = ctx.mpc(0)
        for r, c in self.terms.items():
            s += to_mp(c, ctx) * ctx.expjpi(2 * to_mp(r, ctx))
        bound = sum(abs(float(c)) for c in self.terms.values())
        return BigValue(s, prec, (len(self.terms) + 1) * 2.0 ** (1 - prec) * max(bound, 1.0))

    def __complex__(self):
        return complex(self.value(64).value)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*z({r})" for r, c in sorted(self.terms.items()))


def sin_pi_product(x, y) -> CyclotomicNumber:
    """sin(pi x) sin(pi y) = (cos pi(x-y) - cos pi(x+y)) / 2, exactly."""
    x, y = Fraction(x), Fraction(y)
    quarter = Fraction(1, 4)
    return (
        CyclotomicNumber.root((x - y) / 2, quarter)
        + CyclotomicNumber.root((y - x) / 2, quarter)
        - CyclotomicNumber.root((x + y) / 2, quarter)
        - CyclotomicNumber.root(-(x + y) / 2, quarter)
    )


Matrix = tuple[tuple[CyclotomicNumber, CyclotomicNumber], tuple[CyclotomicNumber, CyclotomicNumber]]


def mat(a, b, c, d) -> Matrix:
    L = CyclotomicNumber._lift
    return ((L(a), L(b)), (L(c), L(d)))


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    return tuple(
        tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)) for i in range(2)
    )


def mat_det(A: Matrix) -> CyclotomicNumber:
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def mat_trace(A: Matrix) -> CyclotomicNumber:
    return A[0][0] + A[1][1]


def mat_is_identity(A: Matrix) -> bool:
    return (A[0][0] - 1).is_zero() and A[0][1].is_zero() and A[1][0].is_zero() and (A[1][1] - 1).is_zero()


def mat_inverse_unit_det(A: Matrix, det_exponent) -> Matrix:
    """Inverse of A whose determinant is exp(2*pi*i*det_exponent)."""
    inv_det = CyclotomicNumber.root(-Fraction(det_exponent))
    assert (mat_det(A) - CyclotomicNumber.root(det_exponent)).is_zero()
    return ((A[1][1] * inv_det, -A[0][1] * inv_det), (-A[1][0] * inv_det, A[0][0] * inv_det))
