"""Residual table of the contiguous relations on seeded random tuples."""

import argparse
import math
import random
from fractions import Fraction

from cmperiods.contiguous import bailey_transform, q_step_relation, random_tuple, three_term

ap = argparse.ArgumentParser()
ap.add_argument("--samples", type=int, default=10)
ap.add_argument("--seed", type=int, default=0)
ap.add_argument("--precision", type=int, default=256)
args = ap.parse_args()

rng = random.Random(args.seed)
prec = args.precision
suites = {
    "q-step": lambda: q_step_relation(*random_tuple(rng, "q-step"), prec=prec).residual,
    "bailey": lambda: bailey_transform(*random_tuple(rng, "bailey"), prec=prec).residual,
    "three-term-1/q-shift": lambda: three_term(*random_tuple(rng, "three-term-1"), "q-shift", prec=prec),
    "three-term-1/a-shift": lambda: three_term(*random_tuple(rng, "three-term-1"), "a-shift", prec=prec),
    "three-term-x/q-shift": lambda: three_term(*random_tuple(rng, "three-term-x"), "q-shift", Fraction(rng.randint(1, 19), 20), prec=prec),
    "three-term-x/a-shift": lambda: three_term(*random_tuple(rng, "three-term-x"), "a-shift", Fraction(rng.randint(1, 19), 20), prec=prec),
}
print(f"{'suite':<17} {'max residual':>13} {'log2':>8}")
for name, draw in suites.items():
    worst = max(float(abs(draw().value)) for _ in range(args.samples))
    lg = math.log2(worst) if worst > 0 else float("-inf")
    print(f"{name:<17} {worst:>13.3e} {lg:>8.1f}")
