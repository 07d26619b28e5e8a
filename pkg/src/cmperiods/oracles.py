"""Independent verification backends.

* Double-exponential (tanh-sinh) quadrature on [0, 1] for the Euler-type
  integrals. Integrands evaluate Gauss functions with ``mpmath.hyp2f1``, so
  they share no code with :mod:`cmperiods.hyper`.
* Numerical monodromy of the Gauss equation by continuation along polygonal
  loops with scipy's DOP853 integrator.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .bigvalue import DEFAULT_PREC, BigValue, get_context, to_mp
from .errors import NonConvergence, PathTooClose, SingularIntegrand, StepFailure
from .hyper import HyperParams, pfq
from .params import CharacterIndex, ExponentData, as_fraction
from .period import PolynomialPair
from .specialfn import GammaProductSpec, gamma_product

# ---------------------------------------------------------------- quadrature


@dataclass(frozen=True)
class QuadResult:
    values: tuple  # BigValue per component
    levels: int
    nodes: int
    history: tuple  # per-level max abs change


def tanh_sinh(
    f: Callable,
    prec: int = DEFAULT_PREC,
    tol: float | None = None,
    max_level: int = 10,
    u_cap: float = 9.0,
) -> QuadResult:
    """Integrate a vector-valued ``f(t, tc)`` over [0, 1], where tc = 1 - t.

    Both t and tc are passed with full relative accuracy. The truncation of
    the u-range is found by scanning outward at the first level; the error
    estimate is d1^2/d2 from the last three levels.
    """
    wp = prec + 20
    ctx = get_context(wp)
    eps = 2.0 ** (-wp)
    tol = tol if tol is not None else 2.0 ** (-prec + 8)
    pi = ctx.pi

    def node(u):
        s = pi * ctx.sinh(u)
        ex = ctx.exp(-abs(s))
        small = ex / (1 + ex)
        big = 1 / (1 + ex)
        t, tc = (big, small) if s >= 0 else (small, big)
        w = pi * ctx.cosh(u) * t * tc
        return t, tc, w

    def contrib(u):
        t, tc, w = node(u)
        vals = f(t, tc)
        return [w * v for v in vals]

    # level 1 (h = 1/2) with outward scan on both sides
    h = ctx.mpf(1) / 2
    center = contrib(ctx.mpf(0))
    total = list(center)
    dim = len(total)
    umax = {}
    count = 1
    for sign in (1, -1):
        k = 1
        quiet = 0
        while True:
            u = sign * k * h
            if abs(u) > u_cap:
                umax[sign] = u_cap
                break
            c = contrib(u)
            count += 1
            total = [a + b for a, b in zip(total, c)]
            mag = max(float(abs(x)) for x in c)
            ref = max(float(abs(x)) for x in total)
            quiet = quiet + 1 if mag <= eps * max(ref, 1e-300) else 0
            if quiet >= 2:
                umax[sign] = float(abs(u))
                break
            k += 1
    estimates = [[h * x for x in total]]
    history = []
    level = 1
    while True:
        level += 1
        h = h / 2
        for sign in (1, -1):
            k = 1
            while True:
                u = sign * k * h
                if float(abs(u)) > umax[sign]:
                    break
                c = contrib(u)
                count += 1
                total = [a + b for a, b in zip(total, c)]
                k += 2
        est = [h * x for x in total]
        estimates.append(est)
        d1 = max(float(abs(a - b)) for a, b in zip(est, estimates[-2]))
        history.append(d1)
        scale = max(max(float(abs(x)) for x in est), 1e-300)
        if len(history) >= 2:
            d2 = history[-2]
            if d1 == 0:
                err = eps * scale
            elif d2 > 0 and d1 < d2:
                err = max(d1 * d1 / d2, eps * scale)
            else:
                err = d1
            if level >= 4 and err <= tol * scale:
                break
        if level >= max_level:
            err = d1
            break
    lo = get_context(prec)
    out = tuple(BigValue(+lo.convert(x), prec, err + 2.0 ** (1 - prec) * float(abs(x))) for x in est)
    if level >= max_level and err > tol * scale:
        raise NonConvergence(f"tanh-sinh did not reach {tol:.1e} (estimate {err:.1e}) within {max_level} levels")
    return QuadResult(out, level, count, tuple(history))


def _hi_one_minus(x, wp):
    """1 - x with enough precision to keep all bits of x."""
    bits = max(0, -int(get_context(wp).mag(x))) if x != 0 else 0
    hi = get_context(wp + min(bits, 16 * wp) + 8)
    return hi, hi.mpf(1) - hi.convert(x)


def _hyp2f1_at(a, b, c, t, tc, wp, scale=None):
    """2F1(a, b; c; z) at z = t (scale None) using tc = 1 - t for accuracy near 1."""
    if tc < 2.0 ** -20:
        hi, z = _hi_one_minus(tc, wp)
    else:
        hi = get_context(wp)
        z = hi.convert(t)
    v = hi.hyp2f1(to_mp(a, hi), to_mp(b, hi), to_mp(c, hi), z)
    return get_context(wp).convert(v)


def _hyp2f1_at_one_minus(a, b, c, t, tc, wp):
    """2F1(a, b; c; 1 - t)."""
    if t < 2.0 ** -20:
        hi, z = _hi_one_minus(t, wp)
    else:
        hi = get_context(wp)
        z = hi.convert(tc)
    v = hi.hyp2f1(to_mp(a, hi), to_mp(b, hi), to_mp(c, hi), z)
    return get_context(wp).convert(v)


@dataclass(frozen=True)
class IntegralSpec:
    """int_0^1 2F1(a, b; d; x t) t^(c-1) (1-t)^(e-c-1) dt."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction
    x: Fraction = Fraction(1)

    def __post_init__(self):
        for k in ("a", "b", "c", "d", "e", "x"):
            object.__setattr__(self, k, as_fraction(getattr(self, k)))
        if not (0 <= self.x <= 1):
            raise ValueError("x must lie in [0, 1]")

    def closed_form(self, prec: int = DEFAULT_PREC) -> BigValue:
        """Gamma(c, e-c / e) * 3F2(a, b, c; d, e; x)."""
        g = gamma_product(GammaProductSpec((self.c, self.e - self.c), (self.e,)), prec)
        return g * pfq(HyperParams((self.a, self.b, self.c), (self.d, self.e), self.x), prec)


def quad_euler(spec: IntegralSpec, prec: int = DEFAULT_PREC, tol: float | None = None) -> BigValue:
    if spec.c - 1 <= -1 or spec.e - spec.c - 1 <= -1:
        raise SingularIntegrand("endpoint weights must exceed -1")
    wp = prec + 20
    ctx = get_context(wp)
    c1 = to_mp(spec.c - 1, ctx)
    c2 = to_mp(spec.e - spec.c - 1, ctx)
    xv = to_mp(spec.x, ctx)
    trivial = spec.x == 0 or spec.a == 0 or spec.b == 0

    def f(t, tc):
        w = ctx.power(t, c1) * ctx.power(tc, c2)
        if trivial:
            return [w]
        if spec.x == 1:
            k = _hyp2f1_at(spec.a, spec.b, spec.d, t, tc, wp)
        else:
            k = ctx.hyp2f1(to_mp(spec.a, ctx), to_mp(spec.b, ctx), to_mp(spec.d, ctx), xv * t)
        return [w * k]

    return tanh_sinh(f, prec, tol).values[0]


def quad_beta(a, b, prec: int = DEFAULT_PREC, tol: float | None = None) -> BigValue:
    return quad_euler(IntegralSpec(0, 0, a, 1, as_fraction(a) + as_fraction(b), 0), prec, tol)


def _poly_eval(coeffs, t, ctx):
    acc = ctx.mpf(0)
    for cf in reversed(coeffs):
        acc = acc * t + to_mp(cf, ctx)
    return acc


def _poly_eval_p1(dprime, t, tc, ctx):
    """p1(t) evaluated as (t-1) * (p1(t)/(t-1)) so it stays accurate near t = 1."""
    # synthetic division by (t - 1): p1 = (t-1) * r(t)
    n = len(dprime)
    if n == 0:
        return ctx.mpf(0)
    r = [Fraction(0)] * (n - 1)
    acc = Fraction(0)
    for i in range(n - 1, 0, -1):
        acc = acc + dprime[i]
        r[i - 1] = acc
    return -tc * _poly_eval(r, t, ctx)


def quad_I_m(
    p: PolynomialPair, e: ExponentData, c: CharacterIndex, ms: Sequence[int], prec: int = DEFAULT_PREC, tol=None
) -> list[BigValue]:
    """int_0^1 t^(q+m-1) (p0 F1 + p1 F1') dt for each m, on shared nodes."""
    wp = prec + 20
    ctx = get_context(wp)
    q = c.q
    a, b = e.a, e.b
    al1 = to_mp(e.alpha1, ctx)
    exps = [to_mp(q + m - 1 + e.alpha1, ctx) for m in ms]
    has_p1 = any(p.dprime)

    def f(t, tc):
        g = _hyp2f1_at_one_minus(a, b, 1, t, tc, wp)
        base = _poly_eval(p.d, t, ctx) * g
        if has_p1:
            g2 = _hyp2f1_at_one_minus(a + 1, b + 1, 2, t, tc, wp)
            # t * F1' / t^a1 = a1 * g - a b t g2
            deriv_t = al1 * g - to_mp(a * b, ctx) * t * g2
            base = base + _poly_eval_p1(p.dprime, t, tc, ctx) * deriv_t / t
        return [ctx.power(t, s) * base for s in exps]

    return list(tanh_sinh(f, prec, tol).values)


def quad_J_m(
    p: PolynomialPair, e: ExponentData, c: CharacterIndex, ms: Sequence[int], prec: int = DEFAULT_PREC, tol=None
) -> list[BigValue]:
    """int_0^1 t^(q+m-1) (p0 F2 + p1 F2') dt for each m."""
    wp = prec + 20
    ctx = get_context(wp)
    q = c.q
    a, b, c2 = e.a, e.b, e.c_lower
    al1 = to_mp(e.alpha1, ctx)
    exps = [to_mp(q + m - 1 + e.alpha1, ctx) for m in ms]
    has_p1 = any(p.dprime)

    def f(t, tc):
        g = _hyp2f1_at(a, b, c2, t, tc, wp)
        base = _poly_eval(p.d, t, ctx) * g
        if has_p1:
            g2 = _hyp2f1_at(a + 1, b + 1, c2 + 1, t, tc, wp)
            deriv_t = al1 * g + to_mp(a * b / c2, ctx) * t * g2
            base = base + _poly_eval_p1(p.dprime, t, tc, ctx) * deriv_t / t
        return [ctx.power(t, s) * base for s in exps]

    return list(tanh_sinh(f, prec, tol).values)


def quad_K_n(e: ExponentData, c: CharacterIndex, ns: Sequence[int], prec: int = DEFAULT_PREC, tol=None) -> list[BigValue]:
    """int_0^1 t^(q+n-1) F2(t) dt."""
    return quad_J_m(PolynomialPair([1]), e, c, [n for n in ns], prec, tol) if all(n >= 0 for n in ns) else []


# ---------------------------------------------------------------- monodromy

MIN_DISTANCE = 0.1


def _segment_distance(p: complex, a: complex, b: complex) -> float:
    d = b - a
    if d == 0:
        return abs(p - a)
    s = ((p - a) * d.conjugate()).real / abs(d) ** 2
    s = min(1.0, max(0.0, s))
    return abs(p - (a + s * d))


@dataclass(frozen=True)
class LoopPath:
    """Closed polygon through ``waypoints`` starting and ending at ``base``."""

    waypoints: tuple
    base: complex = 0.5
    winding_target: str = "composite"

    def __post_init__(self):
        pts = tuple(complex(z) for z in self.waypoints)
        object.__setattr__(self, "waypoints", pts)
        if abs(pts[0] - self.base) > 1e-14 or abs(pts[-1] - self.base) > 1e-14:
            raise ValueError("loop must start and end at the base point")
        for a, b in zip(pts, pts[1:]):
            for sing in (0.0, 1.0):
                if _segment_distance(sing, a, b) < MIN_DISTANCE:
                    raise PathTooClose(f"segment {a} -> {b} passes within {MIN_DISTANCE} of {sing}")

    def winding(self, point: complex) -> int:
        total = 0.0
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            total += cmath.phase((b - point) / (a - point))
        return int(round(total / (2 * math.pi)))

    def then(self, other: "LoopPath") -> "LoopPath":
        """Traverse self first, then other."""
        return LoopPath(self.waypoints + other.waypoints[1:], self.base, "composite")

    @staticmethod
    def around_zero(radius: float = 0.5, vertices: int = 24) -> "LoopPath":
        pts = [radius * cmath.exp(2j * math.pi * k / vertices) for k in range(vertices)] + [radius]
        return LoopPath(tuple(pts), radius, "0")

    @staticmethod
    def around_one(radius: float = 0.5, vertices: int = 24) -> "LoopPath":
        pts = [1 + radius * cmath.exp(1j * (math.pi + 2 * math.pi * k / vertices)) for k in range(vertices)]
        pts.append(1 - radius)
        return LoopPath(tuple(pts), 1 - radius, "1")

    @staticmethod
    def around_infinity(radius: float = 2.0, vertices: int = 48, base: float = 0.5) -> "LoopPath":
        """Up to base + i*radius, clockwise around both singular points, and back.

        As based loops this is the inverse of (around_zero then around_one),
        so its matrix is (M1 M0)^-1.
        """
        top = base + 1j * radius
        circle = [base + radius * cmath.exp(1j * (math.pi / 2 - 2 * math.pi * k / vertices)) for k in range(vertices)]
        pts = [base] + circle + [top, base]
        return LoopPath(tuple(pts), base, "inf")

    @staticmethod
    def contractible(base: float = 0.5) -> "LoopPath":
        return LoopPath((base, base + 0.3j, base + 0.1 + 0.3j, base), base, "contractible")


def _gauss_rhs(a: complex, b: complex, c: complex, p0: complex, dz: complex):
    def rhs(s, y):
        t = p0 + s * dz
        y1, y1p, y2, y2p = y
        k = 1.0 / (t * (1 - t))
        lin = c - (a + b + 1) * t
        y1pp = (a * b * y1 - lin * y1p) * k
        y2pp = (a * b * y2 - lin * y2p) * k
        return np.array([y1p, y1pp, y2p, y2pp]) * dz

    return rhs


def ode_monodromy(a, b, c, loop: LoopPath, rtol: float = 1e-13, atol: float = 1e-15) -> np.ndarray:
    """Monodromy of t(1-t)y'' + [c-(a+b+1)t]y' - ab y = 0 along ``loop``.

    The basis at the base point has Wronskian matrix I, so the returned
    matrix M satisfies (continued basis) = (basis) * M.
    """
    a, b, c = (float(as_fraction(v)) for v in (a, b, c))
    y = np.array([1, 0, 0, 1], dtype=complex)
    pts = loop.waypoints
    for p0, p1 in zip(pts, pts[1:]):
        dz = p1 - p0
        if dz == 0:
            continue
        sol = solve_ivp(_gauss_rhs(a, b, c, p0, dz), (0.0, 1.0), y, method="DOP853", rtol=rtol, atol=atol)
        if not sol.success:
            raise StepFailure(f"integration failed on segment {p0} -> {p1}: {sol.message}")
        y = sol.y[:, -1]
    return np.array([[y[0], y[2]], [y[1], y[3]]])


def exponent_system_monodromy(e: ExponentData, loop: LoopPath, **kw) -> np.ndarray:
    """Monodromy of t^alpha1 times the Gauss solutions for (a, b, 1+alpha1-alpha2)."""
    M = ode_monodromy(e.a, e.b, e.c_lower, loop, **kw)
    w = loop.winding(0)
    return cmath.exp(2j * math.pi * float(e.alpha1) * w) * M


def _eigen_mismatch(M: np.ndarray, expected: Sequence[complex]) -> float:
    ev = np.linalg.eigvals(M)
    e0, e1 = expected
    return float(min(max(abs(ev[0] - e0), abs(ev[1] - e1)), max(abs(ev[0] - e1), abs(ev[1] - e0))))


@dataclass(frozen=True)
class MonodromyCheck:
    """Numeric loop matrices compared with the local exponents and the symbolic system."""

    exponents: ExponentData
    eigen_error: dict  # point -> max eigenvalue mismatch
    product_error: float  # |M_inf M_1 M_0 - I|
    trace_error: float  # |tr(M_1 M_0) - (z(a1) + z(a2) + epsilon)|
    inf_trace_error: float  # |tr(M_inf) - tr(T_inf)|

    @property
    def worst(self) -> float:
        return max(max(self.eigen_error.values()), self.product_error, self.trace_error, self.inf_trace_error)

    def to_json(self) -> dict:
        return {
            "eigen_error": {k: self.eigen_error[k] for k in sorted(self.eigen_error)},
            "product_error": self.product_error,
            "trace_error": self.trace_error,
            "inf_trace_error": self.inf_trace_error,
        }


def monodromy_consistency(e: ExponentData, **kw) -> MonodromyCheck:
    from .monodromy import build_local_system, riemann_scheme

    loops = {"0": LoopPath.around_zero(), "1": LoopPath.around_one(), "inf": LoopPath.around_infinity()}
    M = {k: exponent_system_monodromy(e, L, **kw) for k, L in loops.items()}
    scheme = riemann_scheme(e)
    eig = {k: _eigen_mismatch(M[k], scheme.eigenvalues(k)) for k in loops}
    prod = float(np.abs(M["inf"] @ M["1"] @ M["0"] - np.eye(2)).max())
    ls = build_local_system(e)
    z = lambda x: cmath.exp(2j * math.pi * float(x))  # noqa: E731
    eps = complex(ls.epsilon.value)
    tr = float(abs(np.trace(M["1"] @ M["0"]) - (z(e.alpha1) + z(e.alpha2) + eps)))
    Tinf = ls.Tinf
    tr_inf_sym = complex((Tinf[0][0] + Tinf[1][1]).value(64).value)
    tr_inf = float(abs(np.trace(M["inf"]) - tr_inf_sym))
    return MonodromyCheck(e, eig, prod, tr, tr_inf)
