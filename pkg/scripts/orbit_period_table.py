"""Period values and Hodge types over the Galois orbit of a parameter set.

    python scripts/orbit_period_table.py 0 1/3 1/3 1/3 1/5
"""

import argparse
from fractions import Fraction

from cmperiods.params import CharacterIndex, ExponentData, galois_orbit
from cmperiods.period import duality_check, period_value

ap = argparse.ArgumentParser()
ap.add_argument("alpha1", nargs="?", default="0")
ap.add_argument("alpha2", nargs="?", default="1/3")
ap.add_argument("beta1", nargs="?", default="1/3")
ap.add_argument("beta2", nargs="?", default="1/3")
ap.add_argument("q", nargs="?", default="1/5")
ap.add_argument("--digits", type=int, default=25)
args = ap.parse_args()

e = ExponentData(*(Fraction(x) for x in (args.alpha1, args.alpha2, args.beta1, args.beta2)))
c = CharacterIndex.from_fraction(Fraction(args.q))
orb = galois_orbit(e, c)
print(f"modulus {orb.modulus}, {len(orb)} elements")
print(f"{'s':>3} {'q':>6} {'alpha':>14} {'beta':>16} {'h':>2} {'Im P':>{args.digits + 4}} {'duality residual':>17}")
for el in orb.elements:
    ex, ch = el.exponents, el.character
    per = period_value(ex, ch)
    res = float(abs(duality_check(ex, ch).residual.value))
    al = ",".join(str(x) for x in ex.alphas)
    be = ",".join(str(x) for x in ex.betas)
    print(f"{el.s:>3} {str(ch.q):>6} {al:>14} {be:>16} {per.hodge_type:>2} {per.value.imag.to_decimal(args.digits):>{args.digits + 4}} {res:>17.2e}")
