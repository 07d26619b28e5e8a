"""Extended-precision values with an attached absolute error bound.

All arithmetic runs in private :class:`mpmath.MPContext` instances, one per
precision and thread, so nothing here touches ``mpmath.mp``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any

import mpmath

DEFAULT_PREC = 256

_local = threading.local()


def get_context(prec: int) -> mpmath.ctx_mp.MPContext:
    """Return this thread's mpmath context running at ``prec`` bits."""
    cache = getattr(_local, "contexts", None)
    if cache is None:
        cache = _local.contexts = {}
    ctx = cache.get(prec)
    if ctx is None:
        ctx = mpmath.MPContext()
        ctx.prec = prec
        cache[prec] = ctx
    return ctx


def to_mp(x: Any, ctx):
    """Convert ints, Fractions, floats and mpmath numbers into ``ctx``."""
    if isinstance(x, BigValue):
        x = x.value
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return ctx.mpf(x)
    if isinstance(x, Rational):
        return ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, complex):
        return ctx.mpc(x)
    return ctx.convert(x)


def _ulp(prec: int) -> float:
    return math.ldexp(1.0, -prec)


def _mag(x) -> float:
    """|x| as a float, saturating instead of overflowing."""
    try:
        return float(abs(x))
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class BigValue:
    """A real or complex mpmath number plus an absolute error bound.

    ``err`` bounds ``|value - true value|`` under first-order propagation of
    the per-operation rounding ``2**-prec * |result|``.
    """

    value: Any
    prec: int = DEFAULT_PREC
    err: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "err", float(self.err))

    @classmethod
    def exact(cls, x, prec: int = DEFAULT_PREC) -> "BigValue":
        """Wrap ``x``; a rational that is not dyadic picks up one rounding."""
        ctx = get_context(prec)
        v = to_mp(x, ctx)
        err = 0.0
        if isinstance(x, Rational) and not isinstance(x, int):
            d = x.denominator
            if d & (d - 1):
                err = _ulp(prec) * _mag(v)
        return cls(v, prec, err)

    @property
    def ctx(self):
        return get_context(self.prec)

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0

    @property
    def real(self) -> "BigValue":
        return BigValue(self.ctx.re(self.value), self.prec, self.err)

    @property
    def imag(self) -> "BigValue":
        return BigValue(self.ctx.im(self.value), self.prec, self.err)

    @property
    def rel_err(self) -> float:
        m = _mag(self.value)
        return math.inf if m == 0 else self.err / m

    def __abs__(self):
        return abs(self.value)

    def __float__(self) -> float:
        return float(self.ctx.re(self.value))

    def __complex__(self) -> complex:
        return complex(self.value)

    def conjugate(self) -> "BigValue":
        return BigValue(self.ctx.conj(self.value), self.prec, self.err)

    def with_err(self, err: float) -> "BigValue":
        return BigValue(self.value, self.prec, float(err))

    def to_decimal(self, digits: int | None = None) -> str:
        if digits is None:
            digits = max(15, int(self.prec * 0.30103) - 3)
        return mpmath.nstr(self.value, digits, strip_zeros=False)

    # arithmetic with first-order error propagation

    def _coerce(self, other):
        if isinstance(other, BigValue):
            prec = min(self.prec, other.prec)
            ctx = get_context(prec)
            return ctx, to_mp(self.value, ctx), self.err, to_mp(other.value, ctx), other.err, prec
        ctx = self.ctx
        o = BigValue.exact(other, self.prec)
        return ctx, self.value, self.err, o.value, o.err, self.prec

    def _new(self, v, err, prec):
        return BigValue(v, prec, float(err) + _ulp(prec) * _mag(v))

    def __add__(self, other):
        ctx, a, ea, b, eb, prec = self._coerce(other)
        return self._new(a + b, ea + eb, prec)

    __radd__ = __add__

    def __sub__(self, other):
        ctx, a, ea, b, eb, prec = self._coerce(other)
        return self._new(a - b, ea + eb, prec)

    def __rsub__(self, other):
        ctx, a, ea, b, eb, prec = self._coerce(other)
        return self._new(b - a, ea + eb, prec)

    def __mul__(self, other):
        ctx, a, ea, b, eb, prec = self._coerce(other)
        err = _mag(a) * eb + _mag(b) * ea + ea * eb
        return self._new(a * b, err, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        ctx, a, ea, b, eb, prec = self._coerce(other)
        mb = _mag(b)
        if mb <= eb:
            raise ZeroDivisionError("divisor is not bounded away from zero")
        q = a / b
        err = (ea + _mag(q) * eb) / (mb - eb)
        return self._new(q, err, prec)

    def __rtruediv__(self, other):
        ctx, a, ea, b, eb, prec = self._coerce(other)
        ma = _mag(a)
        if ma <= ea:
            raise ZeroDivisionError("divisor is not bounded away from zero")
        q = b / a
        err = (eb + _mag(q) * ea) / (ma - ea)
        return self._new(q, err, prec)

    def __neg__(self):
        return BigValue(-self.value, self.prec, self.err)

    def __repr__(self) -> str:
        return f"BigValue({mpmath.nstr(self.value, 20)}, prec={self.prec}, err={self.err:.2e})"


def close(x: BigValue, y, tol: float = 0.0) -> bool:
    """``|x - y| <= err(x) + err(y) + tol``."""
    d = x - y
    return _mag(d.value) <= d.err + tol
