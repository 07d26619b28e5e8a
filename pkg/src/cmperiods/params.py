"""Exact exponent data, validation, Pochhammer symbols and Galois orbits."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable

from .errors import ConfigError, DegenerateOrbit, NormalizationError


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ConfigError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"not a rational: {x!r}") from exc
    raise ConfigError(f"rationals must be given exactly, got {type(x).__name__}")


def frac_part(x: Fraction) -> Fraction:
    """Representative of x mod 1 in [0, 1)."""
    return x - math.floor(x)


def is_integer(x: Fraction) -> bool:
    return x.denominator == 1


def pochhammer(x, n: int) -> Fraction:
    """Rising factorial (x)_n, exact."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = as_fraction(x)
    out = Fraction(1)
    for i in range(n):
        out *= x + i
    return out


@dataclass(frozen=True)
class ExponentData:
    """Local exponents (alpha1, alpha2) at 0 and (beta1, beta2) at infinity.

    The sum must be exactly 1. Irreducibility is not enforced here; it is
    reported by :func:`validate` and enforced by the consumers that need it.
    """

    alpha1: Fraction
    alpha2: Fraction
    beta1: Fraction
    beta2: Fraction

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "beta1", "beta2"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.total != 1:
            raise NormalizationError(
                f"exponents must sum to 1, got {self.total}"
            )

    @classmethod
    def unchecked(cls, alpha1, alpha2, beta1, beta2) -> "ExponentData":
        """Build without the normalization check (for reporting bad input)."""
        obj = object.__new__(cls)
        for name, v in zip(("alpha1", "alpha2", "beta1", "beta2"), (alpha1, alpha2, beta1, beta2)):
            object.__setattr__(obj, name, as_fraction(v))
        return obj

    @property
    def total(self) -> Fraction:
        return self.alpha1 + self.alpha2 + self.beta1 + self.beta2

    @property
    def alphas(self) -> tuple[Fraction, Fraction]:
        return (self.alpha1, self.alpha2)

    @property
    def betas(self) -> tuple[Fraction, Fraction]:
        return (self.beta1, self.beta2)

    @property
    def a(self) -> Fraction:
        return self.alpha1 + self.beta1

    @property
    def b(self) -> Fraction:
        return self.alpha1 + self.beta2

    @property
    def c_lower(self) -> Fraction:
        """Lower parameter 1 + alpha1 - alpha2 of the local solution at 0."""
        return 1 + self.alpha1 - self.alpha2

    def canonical(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(frac_part(x) for x in (self.alpha1, self.alpha2, self.beta1, self.beta2))

    def dual(self) -> "ExponentData":
        """Exponents of the dual data, from the classes of -alpha and -beta."""
        return normalize_classes((-self.alpha1, -self.alpha2), (-self.beta1, -self.beta2), sort=False)

    def to_json(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("alpha1", "alpha2", "beta1", "beta2")}


@dataclass(frozen=True)
class CharacterIndex:
    """The character index k/l with 0 < k < l and gcd(k, l) = 1."""

    k: int
    l: int

    def __post_init__(self):
        if not (isinstance(self.k, int) and isinstance(self.l, int)):
            raise ConfigError("k and l must be integers")
        if not (0 < self.k < self.l) or math.gcd(self.k, self.l) != 1:
            raise ConfigError(f"need 0 < k < l with gcd 1, got k={self.k}, l={self.l}")

    @classmethod
    def from_fraction(cls, q) -> "CharacterIndex":
        q = as_fraction(q)
        return cls(q.numerator, q.denominator)

    @property
    def q(self) -> Fraction:
        return Fraction(self.k, self.l)

    def dual(self) -> "CharacterIndex":
        return CharacterIndex(self.l - self.k, self.l)

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l}


@dataclass(frozen=True)
class Violation:
    label: str
    value: Fraction


@dataclass(frozen=True)
class ValidationReport:
    normalized: bool
    irreducible: bool
    integrality_ok: bool
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return self.normalized and self.irreducible and self.integrality_ok

    def to_json(self) -> dict:
        return {
            "normalized": self.normalized,
            "irreducible": self.irreducible,
            "integrality_ok": self.integrality_ok,
            "violations": [{"label": v.label, "value": str(v.value)} for v in self.violations],
        }


def validate(e: ExponentData, c: CharacterIndex) -> ValidationReport:
    """Check normalization, irreducibility and the period-formula integrality conditions."""
    violations = []
    normalized = e.total == 1
    if not normalized:
        violations.append(Violation("alpha1+alpha2+beta1+beta2", e.total))
    irreducible = True
    for i, al in enumerate(e.alphas, 1):
        for j, be in enumerate(e.betas, 1):
            if is_integer(al + be):
                irreducible = False
                violations.append(Violation(f"alpha{i}+beta{j}", al + be))
    q = c.q
    main_ok = True
    checks = [
        ("q+alpha1", q + e.alpha1),
        ("q+alpha2", q + e.alpha2),
        ("-q+beta1", -q + e.beta1),
        ("-q+beta2", -q + e.beta2),
    ]
    for label, v in checks:
        if is_integer(v):
            main_ok = False
            violations.append(Violation(label, v))
    return ValidationReport(normalized, irreducible, main_ok, tuple(violations))


def normalize_classes(alphas: Iterable, betas: Iterable, sort: bool = True) -> ExponentData:
    """Exponent data from classes mod 1, renormalized to sum exactly 1.

    Every class is first reduced into [0, 1). The sum S is then an integer in
    {0, 1, 2, 3}; the betas are moved by integers to bring it to 1.
    """
    al = [frac_part(as_fraction(x)) for x in alphas]
    be = [frac_part(as_fraction(x)) for x in betas]
    if sort:
        al.sort()
        be.sort()
    s = sum(al) + sum(be)
    if not is_integer(s):
        raise NormalizationError(f"classes do not sum to an integer: {s}")
    s = int(s)
    if s == 0:
        be[1] += 1
    elif s == 2:
        be[1] -= 1
    elif s == 3:
        be[0] -= 1
        be[1] -= 1
    return ExponentData(al[0], al[1], be[0], be[1])


@dataclass(frozen=True)
class OrbitElement:
    s: int
    exponents: ExponentData
    character: CharacterIndex

    def key(self):
        return (self.character.q, self.exponents.alphas, self.exponents.betas)


@dataclass(frozen=True)
class GaloisOrbit:
    modulus: int
    elements: tuple[OrbitElement, ...]

    def __len__(self):
        return len(self.elements)

    def find(self, s: int) -> OrbitElement:
        """The element produced by the unit s (possibly a duplicate's representative)."""
        ak = act(self.modulus, s, self.elements[0].exponents, self.elements[0].character).key()
        for el in self.elements:
            if el.key() == ak:
                return el
        raise KeyError(s)


def _lcm(*ns: int) -> int:
    return reduce(lambda x, y: x * y // math.gcd(x, y), ns, 1)


def orbit_modulus(e: ExponentData, c: CharacterIndex) -> int:
    return _lcm(c.l, *(x.denominator for x in (e.alpha1, e.alpha2, e.beta1, e.beta2)))


def units(n: int) -> list[int]:
    return [s for s in range(1, n + 1) if math.gcd(s, n) == 1] if n > 1 else [1]


def act(modulus: int, s: int, e: ExponentData, c: CharacterIndex) -> OrbitElement:
    """Conjugate (e, c) by the unit s.

    The new index is q' = s*q mod 1; the alphas are s*(q+alpha) - q' and the
    betas s*(-q+beta) + q', all mod 1, sorted and renormalized.
    """
    if math.gcd(s, modulus) != 1:
        raise ValueError(f"{s} is not a unit mod {modulus}")
    q = c.q
    q2 = frac_part(s * q)
    if q2 == 0:
        raise DegenerateOrbit("conjugated character index is integral")
    al = [s * (q + x) - q2 for x in e.alphas]
    be = [s * (-q + x) + q2 for x in e.betas]
    e2 = normalize_classes(al, be)
    return OrbitElement(s % modulus if modulus > 1 else 1, e2, CharacterIndex.from_fraction(q2))


def galois_orbit(e: ExponentData, c: CharacterIndex) -> GaloisOrbit:
    """All conjugates under (Z/NZ)^x, duplicates removed, identity first."""
    rep = validate(e, c)
    if not rep.integrality_ok:
        raise DegenerateOrbit("input violates the integrality conditions")
    n = orbit_modulus(e, c)
    seen = {}
    for s in units(n):
        el = act(n, s, e, c)
        r = validate(el.exponents, el.character)
        if not (r.integrality_ok and r.irreducible == validate(e, c).irreducible):
            raise DegenerateOrbit(f"conjugate by s={s} violates the integrality conditions")
        seen.setdefault(el.key(), el)
    return GaloisOrbit(n, tuple(seen.values()))


def random_admissible(rng: random.Random, max_den: int = 12) -> tuple[ExponentData, CharacterIndex]:
    """Draw normalized, irreducible exponent data with a valid character index."""
    while True:
        al = [Fraction(rng.randrange(0, d), d) for d in (rng.randint(1, max_den) for _ in range(2))]
        b1 = Fraction(rng.randrange(0, d := rng.randint(1, max_den)), d)
        b2 = -(al[0] + al[1] + b1)
        e = normalize_classes(al, (b1, b2))
        l = rng.randint(2, max_den)
        k = rng.randrange(1, l)
        if math.gcd(k, l) != 1:
            continue
        c = CharacterIndex(k, l)
        if validate(e, c).ok:
            return e, c


RUNNING_SETS = (
    (ExponentData(0, 0, Fraction(1, 2), Fraction(1, 2)), CharacterIndex(1, 3)),
    (ExponentData(0, Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)), CharacterIndex(1, 5)),
)
