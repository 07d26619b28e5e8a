"""Command-line front end.

    cmperiods <command> [--config FILE] [--precision N] [--out PATH] [--format json|csv]

Parameter files are JSON with rationals written as "p/q" strings::

    {"alpha": ["0", "1/3"], "beta": ["1/3", "1/3"], "q": "1/5",
     "p0": ["1"], "p1": [], "m": [1, 5]}

Exit status: 0 if every check passes, 1 on a check failure, 2 on a bad config.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import random
import sys
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Any

from .bigvalue import BigValue
from .contiguous import (
    a_chain,
    bailey_transform,
    kn_reduce_table,
    q_step_relation,
    q_chain,
    random_tuple,
    three_term,
)
from .errors import CMPeriodsError, ConfigError
from .monodromy import build_local_system
from .params import (
    CharacterIndex,
    ExponentData,
    RUNNING_SETS,
    as_fraction,
    frac_part,
    galois_orbit,
    random_admissible,
    validate,
)
from .period import (
    C_m,
    I_m,
    PolynomialPair,
    duality_check,
    find_nonvanishing_m,
    hodge_type,
    dual_data,
    period_value,
)
from .regulator import ConnectionConstants, J_m, K_n, base_3f2, regulator_decompose
from .specialfn import beta

COMMANDS = ("validate", "period", "regulator", "orbit", "monodromy", "verify")
KEYS = {
    "command", "alpha", "beta", "q", "p0", "p1", "m", "precision", "tolerances",
    "multiplier", "offset", "constants", "quadrature", "samples", "seed",
}


@dataclass(frozen=True)
class Tolerances:
    identity: float = 2.0**-200
    duality: float = 1e-20
    quadrature: float = 1e-15
    decomposition: float = 1e-15
    monodromy: float = 1e-6


@dataclass(frozen=True)
class RunConfig:
    command: str
    exponents: ExponentData | None = None
    character: CharacterIndex | None = None
    polynomials: PolynomialPair = field(default_factory=lambda: PolynomialPair([1]))
    m_range: tuple[int, int] = (1, 5)
    precision: int = 256
    tolerances: Tolerances = field(default_factory=Tolerances)
    multiplier: Fraction = Fraction(1)
    offset: Fraction | None = None
    lambda2_over_beta: Fraction | None = None
    lambda1: Fraction | None = None
    quadrature: bool = True
    samples: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.precision < 64:
            raise ConfigError("precision must be at least 64 bits")
        if any(v <= 0 for v in asdict(self.tolerances).values()):
            raise ConfigError("tolerances must be positive")
        lo, hi = self.m_range
        if lo < 1 or hi < lo:
            raise ConfigError(f"bad m range {self.m_range}")
        if self.samples < 1:
            raise ConfigError("samples must be positive")
        if self.command != "verify" and (self.exponents is None or self.character is None):
            raise ConfigError(f"{self.command} needs alpha, beta and q")

    def canonical(self) -> dict:
        """Stable JSON-ready view of the effective inputs."""
        e, c = self.exponents, self.character
        s = lambda x: None if x is None else str(x)  # noqa: E731
        return {
            "command": self.command,
            "alpha": None if e is None else [str(x) for x in e.alphas],
            "beta": None if e is None else [str(x) for x in e.betas],
            "q": None if c is None else str(c.q),
            "p0": [str(x) for x in self.polynomials.d],
            "p1": [str(x) for x in self.polynomials.dprime],
            "m": list(self.m_range),
            "precision": self.precision,
            "tolerances": {k: repr(v) for k, v in sorted(asdict(self.tolerances).items())},
            "multiplier": str(self.multiplier),
            "offset": s(self.offset),
            "constants": {"lambda1": s(self.lambda1), "lambda2_over_beta": s(self.lambda2_over_beta)},
            "quadrature": self.quadrature,
            "samples": self.samples,
            "seed": self.seed,
        }

    def digest(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()


def _frac(x, what: str) -> Fraction:
    try:
        return as_fraction(x)
    except ConfigError:
        raise
    except (TypeError, ValueError, ZeroDivisionError) as ex:
        raise ConfigError(f"{what}: {ex}") from None


def _pair(raw, what: str) -> list[Fraction]:
    if not isinstance(raw, list) or len(raw) != 2:
        raise ConfigError(f"{what} must be a list of two rationals")
    return [_frac(x, what) for x in raw]


def parse_config(data: dict, command: str | None = None, precision: int | None = None) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    cmd = command or data.get("command")
    if cmd is None:
        raise ConfigError("no command given")
    kw: dict[str, Any] = {"command": cmd}
    if "alpha" in data or "beta" in data:
        al = _pair(data.get("alpha"), "alpha")
        be = _pair(data.get("beta"), "beta")
        kw["exponents"] = ExponentData.unchecked(*al, *be)
    if "q" in data:
        q = _frac(data["q"], "q")
        kw["character"] = CharacterIndex.from_fraction(q)
    if "p0" in data or "p1" in data:
        try:
            kw["polynomials"] = PolynomialPair(
                [_frac(x, "p0") for x in data.get("p0", [])], [_frac(x, "p1") for x in data.get("p1", [])]
            )
        except ValueError as ex:
            raise ConfigError(str(ex)) from None
    if "m" in data:
        m = data["m"]
        if isinstance(m, int):
            kw["m_range"] = (m, m)
        elif isinstance(m, list) and len(m) == 2 and all(isinstance(x, int) for x in m):
            kw["m_range"] = (m[0], m[1])
        else:
            raise ConfigError("m must be an integer or [first, last]")
    prec = precision if precision is not None else data.get("precision", 256)
    if not isinstance(prec, int):
        raise ConfigError("precision must be an integer")
    kw["precision"] = prec
    if "tolerances" in data:
        tol = data["tolerances"]
        if not isinstance(tol, dict) or set(tol) - set(asdict(Tolerances())):
            raise ConfigError(f"tolerances must be an object with keys {sorted(asdict(Tolerances()))}")
        try:
            kw["tolerances"] = Tolerances(**{k: float(v) for k, v in tol.items()})
        except (TypeError, ValueError) as ex:
            raise ConfigError(f"tolerances: {ex}") from None
    if "multiplier" in data:
        kw["multiplier"] = _frac(data["multiplier"], "multiplier")
    if data.get("offset") is not None:
        kw["offset"] = _frac(data["offset"], "offset")
    consts = data.get("constants") or {}
    if not isinstance(consts, dict) or set(consts) - {"lambda1", "lambda2_over_beta"}:
        raise ConfigError("constants may set lambda1 and lambda2_over_beta")
    if consts.get("lambda1") is not None:
        kw["lambda1"] = _frac(consts["lambda1"], "lambda1")
    if consts.get("lambda2_over_beta") is not None:
        kw["lambda2_over_beta"] = _frac(consts["lambda2_over_beta"], "lambda2_over_beta")
    for key, typ in (("quadrature", bool), ("samples", int), ("seed", int)):
        if key in data:
            if not isinstance(data[key], typ):
                raise ConfigError(f"{key} must be {typ.__name__}")
            kw[key] = data[key]
    return RunConfig(**kw)


# ---------------------------------------------------------------- reporting


class Report:
    def __init__(self, config: RunConfig):
        self.config = config
        self.results: dict = {}
        self.checks: list[dict] = []

    def check(self, name: str, value, tolerance=None, passed: bool | None = None) -> bool:
        if passed is None:
            passed = value < tolerance
        self.checks.append(
            {
                "name": name,
                "value": value if isinstance(value, (bool, str)) else float(value),
                "tolerance": tolerance,
                "pass": bool(passed),
            }
        )
        return bool(passed)

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "command": self.config.command,
            "config_sha256": self.config.digest(),
            "precision_bits": self.config.precision,
            "inputs": self.config.canonical(),
            "results": self.results,
            "checks": self.checks,
            "pass": self.ok,
        }

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["config_sha256", "precision_bits", "name", "value", "tolerance", "pass"])
        for c in self.checks:
            w.writerow([self.config.digest(), self.config.precision, c["name"], c["value"], c["tolerance"], c["pass"]])
        return buf.getvalue()


def _rel(x: BigValue, y: BigValue) -> float:
    return float(abs(x.value - y.value) / abs(y.value)) if y.value != 0 else float(abs(x.value))


def _abs(x: BigValue) -> float:
    return float(abs(x.value))


def _dec(x: BigValue, digits: int = 40) -> str:
    return x.to_decimal(digits)


def _admissible(rep: Report, e: ExponentData, c: CharacterIndex) -> bool:
    v = validate(e, c)
    rep.results["validation"] = v.to_json()
    return rep.check("admissible", v.ok, passed=v.ok)


# ---------------------------------------------------------------- commands


def cmd_validate(cfg: RunConfig, rep: Report) -> None:
    _admissible(rep, cfg.exponents, cfg.character)


def cmd_period(cfg: RunConfig, rep: Report) -> None:
    e, c, prec, tol = cfg.exponents, cfg.character, cfg.precision, cfg.tolerances
    if not _admissible(rep, e, c):
        return
    per = period_value(e, c, prec)
    rep.results["period"] = per.to_json()
    ed, cd = dual_data(e, c)
    h, hd = hodge_type(e, c), hodge_type(ed, cd)
    rep.results["dual"] = {"alpha": [str(x) for x in ed.alphas], "beta": [str(x) for x in ed.betas], "q": str(cd.q)}
    rep.results["hodge_type"] = h
    rep.results["dual_hodge_type"] = hd
    rep.check("hodge_weight_symmetry", h + hd == 2, passed=h + hd == 2)
    d = duality_check(e, c, prec)
    rep.results["duality"] = {
        "residual_abs": _abs(d.residual),
        "sine_factor": _dec(d.sine_factor),
        "sine_factor_exact": None if d.sine_factor_exact is None else str(d.sine_factor_exact),
        "reflection_pairs_match": d.symbolic_zero,
    }
    rep.check("duality_residual", _abs(d.residual), tol.duality)
    p = cfg.polynomials
    ms = list(range(cfg.m_range[0], cfg.m_range[1] + 1))
    rows = []
    quad = None
    if cfg.quadrature:
        from .oracles import quad_I_m

        quad = dict(zip(ms, quad_I_m(p, e, c, ms, prec)))
    gp = None
    for m in ms:
        cm = C_m(p, e, c, m)
        val = I_m(p, e, c, m, prec)
        row = {"m": m, "C_m": str(cm), "I_m": _dec(val)}
        if quad is not None:
            if gp is None:
                gp = val if cm == 0 else val / BigValue.exact(cm, prec)
            err = float(abs(quad[m].value - val.value) / abs(gp.value)) if cm else _abs(quad[m])
            row["quadrature"] = _dec(quad[m])
            row["quadrature_rel_error"] = err
            rep.check(f"I_{m}_quadrature", err, tol.quadrature)
        rows.append(row)
    rep.results["I_m"] = rows
    if not p.is_zero():
        try:
            rep.results["first_nonvanishing_m"] = find_nonvanishing_m(p, e, c)
        except CMPeriodsError as ex:
            rep.results["first_nonvanishing_m"] = None
            rep.check("nonvanishing_m_found", str(ex), passed=False)


def _constants(cfg: RunConfig) -> ConnectionConstants:
    e, prec = cfg.exponents, cfg.precision
    base = ConnectionConstants.defaults(e, prec)
    if cfg.lambda1 is None and cfg.lambda2_over_beta is None:
        return base
    prov = dict(base.provenance)
    kw = {}
    if cfg.lambda1 is not None:
        kw.update(lambda1=BigValue.exact(cfg.lambda1, prec), lambda1_exact=cfg.lambda1)
        prov["lambda1"] = "user"
    if cfg.lambda2_over_beta is not None:
        kw.update(lambda2=cfg.lambda2_over_beta * beta(e.a, e.b, prec), lambda2_over_beta=cfg.lambda2_over_beta)
        prov["lambda2"] = "user"
    return replace(base, provenance=prov, **kw)


def cmd_regulator(cfg: RunConfig, rep: Report) -> None:
    e, c, prec, tol = cfg.exponents, cfg.character, cfg.precision, cfg.tolerances
    if not _admissible(rep, e, c):
        return
    consts = _constants(cfg)
    rep.results["constants"] = consts.to_json()
    rep.results["base_3f2"] = _dec(base_3f2(e, c, prec))
    p = cfg.polynomials
    ms = list(range(cfg.m_range[0], cfg.m_range[1] + 1))
    quad = None
    if cfg.quadrature:
        from .oracles import quad_J_m

        quad = dict(zip(ms, quad_J_m(p, e, c, ms, prec)))
    rows = []
    for m in ms:
        cm = C_m(p, e, c, m)
        if cm == 0:
            rows.append({"m": m, "C_m": "0", "skipped": "C_m vanishes"})
            continue
        dec = regulator_decompose(p, e, c, m, consts, cfg.multiplier, cfg.offset, prec)
        row = {"m": m, **dec.to_json()}
        rep.check(f"decomposition_{m}", _abs(dec.residual), tol.decomposition)
        cert = dec.certificate
        if cfg.multiplier == 0:
            zero = _abs(dec.coeff_3f2) == 0
            rep.check(f"coeff_3f2_zero_{m}", zero, passed=zero)
        elif cert.nonzero is not None:
            rep.check(f"coeff_3f2_nonzero_{m}", cert.nonzero, passed=cert.nonzero)
        if quad is not None:
            jm = J_m(p, e, c, m, prec)
            err = _rel(quad[m], jm)
            row["J_m"] = _dec(jm)
            row["J_m_quadrature"] = _dec(quad[m])
            row["J_m_quadrature_rel_error"] = err
            rep.check(f"J_{m}_quadrature", err, tol.quadrature)
        rows.append(row)
    rep.results["decompositions"] = rows


def cmd_orbit(cfg: RunConfig, rep: Report) -> None:
    e, c, prec = cfg.exponents, cfg.character, cfg.precision
    if not _admissible(rep, e, c):
        return
    orb = galois_orbit(e, c)
    base = period_value(e, c, prec)
    base_num = sorted(frac_part(x) for x in base.canonical_spec.numerator)
    base_den = sorted(frac_part(x) for x in base.canonical_spec.denominator)
    rows = []
    for el in orb.elements:
        per = period_value(el.exponents, el.character, prec)
        s = el.s
        num = sorted(frac_part(x) for x in per.canonical_spec.numerator)
        den = sorted(frac_part(x) for x in per.canonical_spec.denominator)
        cov = num == sorted(frac_part(s * x) for x in base_num) and den == sorted(frac_part(s * x) for x in base_den)
        rep.check(f"covariance_s{s}", cov, passed=cov)
        rows.append(
            {
                "s": s,
                "alpha": [str(x) for x in el.exponents.alphas],
                "beta": [str(x) for x in el.exponents.betas],
                "q": str(el.character.q),
                "hodge_type": per.hodge_type,
                "period": per.to_json(),
            }
        )
    rep.results["modulus"] = orb.modulus
    rep.results["size"] = len(orb)
    rep.results["elements"] = rows


def cmd_monodromy(cfg: RunConfig, rep: Report) -> None:
    from .oracles import monodromy_consistency

    e = cfg.exponents
    v = validate(e, cfg.character)
    rep.results["validation"] = v.to_json()
    if not rep.check("normalized_irreducible", v.normalized and v.irreducible, passed=v.normalized and v.irreducible):
        return
    ls = build_local_system(e)
    rep.results["epsilon"] = _dec(ls.epsilon, 30)
    for name, ok in (
        ("symbolic_product_identity", ls.product_is_identity()),
        ("symbolic_trace_identity", ls.trace_identity_holds()),
        ("symbolic_determinants", ls.determinants_hold()),
    ):
        rep.check(name, ok, passed=ok)
    mc = monodromy_consistency(e)
    rep.results["numeric"] = mc.to_json()
    tol = cfg.tolerances.monodromy
    for pt in sorted(mc.eigen_error):
        rep.check(f"eigenvalues_{pt}", mc.eigen_error[pt], tol)
    rep.check("product_identity", mc.product_error, tol)
    rep.check("epsilon_trace", mc.trace_error, tol)
    rep.check("inf_trace", mc.inf_trace_error, tol)


def cmd_verify(cfg: RunConfig, rep: Report) -> None:
    """Builtin identity suites on seeded random inputs plus the running sets."""
    rng = random.Random(cfg.seed)
    prec, tol, n = cfg.precision, cfg.tolerances, cfg.samples
    rows = []

    def row(suite, case, residual, tolerance):
        r = float(residual)
        ok = rep.check(f"{suite}[{case}]", r, tolerance)
        rows.append({"suite": suite, "case": case, "residual": r, "tolerance": tolerance, "pass": ok})

    def fmt(*xs):
        return ",".join(str(x) for x in xs)

    for _ in range(n):
        t = random_tuple(rng, "q-step")
        row("q-step", fmt(*t), _abs(q_step_relation(*t, prec=prec).residual), tol.identity)
    for _ in range(n):
        t = random_tuple(rng, "bailey")
        row("bailey", fmt(*t), _abs(bailey_transform(*t, prec=prec).residual), tol.identity)
    for variant in ("q-shift", "a-shift"):
        for _ in range(n):
            t = random_tuple(rng, "three-term-1")
            row(f"three-term-1/{variant}", fmt(*t), _abs(three_term(*t, variant, prec=prec)), tol.identity)
        for _ in range(n):
            t = random_tuple(rng, "three-term-x")
            x = Fraction(rng.randint(1, 19), 20)
            row(f"three-term-x/{variant}", fmt(*t, x), _abs(three_term(*t, variant, x, prec=prec)), tol.identity)
    for _ in range(n):
        t = random_tuple(rng, "q-step")
        steps = rng.randint(1, 3)
        row("q_chain", fmt(*t, steps), _abs(q_chain(*t, steps).residual(prec)), tol.identity)
    for _ in range(n):
        a, b, c_, q = random_tuple(rng, "q-step")
        src = (a, b + 1, c_ + 1, q + 1)
        row("a_chain", fmt(*src), _abs(a_chain(*src).residual(prec)), tol.identity)
    for e, c in RUNNING_SETS:
        table = kn_reduce_table(e, c, 4)
        base = base_3f2(e, c, prec)
        B = beta(e.a, e.b, prec)
        for k in range(5):
            r = B * K_n(e, c, k, prec) - (table[k].p_n * base + table[k].pprime_n)
            row("kn_reduce", fmt(*e.alphas, *e.betas, c.q, k), _abs(r), tol.identity)
    for e, c in list(RUNNING_SETS) + [random_admissible(rng) for _ in range(n)]:
        case = fmt(*e.alphas, *e.betas, c.q)
        row("duality", case, _abs(duality_check(e, c, prec).residual), tol.duality)
        ed, cd = dual_data(e, c)
        row("hodge_symmetry", case, abs(hodge_type(e, c) + hodge_type(ed, cd) - 2), 0.5)
    for _ in range(n):
        e, _c = random_admissible(rng)
        ls = build_local_system(e)
        ok = ls.product_is_identity() and ls.trace_identity_holds() and ls.determinants_hold()
        row("local_system", fmt(*e.alphas, *e.betas), 0.0 if ok else 1.0, 0.5)
    if cfg.quadrature:
        from .oracles import quad_beta

        for _ in range(min(n, 3)):
            a, b = Fraction(rng.randint(1, 60), 20), Fraction(rng.randint(1, 60), 20)
            row("beta_quadrature", fmt(a, b), _rel(quad_beta(a, b, prec), beta(a, b, prec)), 1e-25)
    rep.results["residual_table"] = rows


HANDLERS = {
    "validate": cmd_validate,
    "period": cmd_period,
    "regulator": cmd_regulator,
    "orbit": cmd_orbit,
    "monodromy": cmd_monodromy,
    "verify": cmd_verify,
}


def run(config: RunConfig) -> tuple[int, Report]:
    rep = Report(config)
    try:
        HANDLERS[config.command](config, rep)
    except ConfigError:
        raise
    except CMPeriodsError as ex:
        rep.results["error"] = {"type": type(ex).__name__, "message": str(ex)}
        rep.check("completed", False, passed=False)
    return (0 if rep.ok else 1), rep


def _verify_table(rep: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["config_sha256", "precision_bits", "suite", "case", "residual", "tolerance", "pass"])
    for r in rep.results.get("residual_table", []):
        w.writerow([rep.config.digest(), rep.config.precision, r["suite"], r["case"], r["residual"], r["tolerance"], r["pass"]])
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="cmperiods", description="Periods and regulators of CM hypergeometric motives.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="JSON parameter file (optional for verify)")
    ap.add_argument("--precision", type=int, help="working precision in bits (>= 64)")
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    args = ap.parse_args(argv)
    try:
        if args.config:
            try:
                with open(args.config, encoding="utf-8") as fh:
                    data = json.load(fh)
            except (OSError, json.JSONDecodeError) as ex:
                raise ConfigError(f"cannot read config: {ex}") from None
        elif args.command == "verify":
            data = {}
        else:
            raise ConfigError(f"{args.command} needs --config")
        cfg = parse_config(data, args.command, args.precision)
        status, rep = run(cfg)
    except ConfigError as ex:
        print(f"config error: {ex}", file=sys.stderr)
        return 2
    if args.format == "csv" and cfg.command == "verify":
        text = _verify_table(rep)
    else:
        text = rep.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
