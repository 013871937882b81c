#!/usr/bin/env python3
"""Monte-Carlo greedy independence ratios on finite graphs converging to
their limit constants, at a size small enough to finish in seconds.

Run: python demos/simulate_families.py
"""

import math

from greedymis.branching import closed_form
from greedymis.estimators import mc_ratio
from greedymis.generators import GeneratorSpec

N = 20_000
SEED = 7

cases = [
    (GeneratorSpec("path", N), (1 - math.exp(-2)) / 2, "two-sided line"),
    (GeneratorSpec("cycle", N), (1 - math.exp(-2)) / 2, "two-sided line"),
    (GeneratorSpec("gnp", N, lam=2.0), closed_form("poisson_gw", lam=2.0),
     "Poisson GW"),
    (GeneratorSpec("uniform_tree", N), 0.5, "size-biased GW"),
    (GeneratorSpec("regular", N, d=3), 0.375, "3-regular tree"),
    (GeneratorSpec("functional_mapping", N), 0.5, "size-biased GW"),
    (GeneratorSpec("functional_permutation", N), (1 - math.exp(-2)) / 2,
     "two-sided line (long cycles)"),
]

print(f"n = {N}, 40 trials each, seed {SEED}\n")
print(f"{'family':24s} {'mean':>9s} {'limit':>9s} {'diff':>9s}  local limit")
for spec, limit, label in cases:
    est = mc_ratio(spec, trials=40, seed=SEED)
    print(f"{spec.family:24s} {est.mean:9.5f} {limit:9.5f} "
          f"{abs(est.mean - limit):9.5f}  {label}")

print("\nThe functional digraph resolves its own ambiguity: a uniform")
print("*mapping* matches 0.5, a uniform *permutation* matches 0.43233.")
