"""Periods and regulators of CM hypergeometric motives, with independent oracles."""

from .bigvalue import DEFAULT_PREC, BigValue, get_context
from .errors import CMPeriodsError
from .params import CharacterIndex, ExponentData, RUNNING_SETS, galois_orbit, validate
from .period import PolynomialPair, I_m, C_m, duality_check, hodge_type, period_value
from .regulator import ConnectionConstants, J_m, K_n, regulator_decompose

__all__ = [
    "DEFAULT_PREC",
    "BigValue",
    "get_context",
    "CMPeriodsError",
    "CharacterIndex",
    "ExponentData",
    "RUNNING_SETS",
    "galois_orbit",
    "validate",
    "PolynomialPair",
    "I_m",
    "C_m",
    "duality_check",
    "hodge_type",
    "period_value",
    "ConnectionConstants",
    "J_m",
    "K_n",
    "regulator_decompose",
]

__version__ = "0.1.0"
