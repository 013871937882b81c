#!/usr/bin/env python3
"""Occupancy correlation decay with distance on a long cycle, the
decreasing-path tail that drives it, and the parallel round counts.

Run: python demos/correlation_and_rounds.py
"""

from greedymis.estimators import (
    covariance_by_distance,
    decreasing_path_tail,
    mc_ratio,
    rounds_stats,
)
from greedymis.generators import GeneratorSpec

spec = GeneratorSpec("cycle", 1000)
est = mc_ratio(spec, trials=200, seed=5)
print(f"cycle n=1000: ratio {est.mean:.4f}; Bernoulli variance "
      f"{est.mean * (1 - est.mean):.4f}")

print("\ncovariance of occupancy indicators by distance (>=8 pooled):")
table = covariance_by_distance(spec, trials=500, pair_samples=4000, seed=5,
                               max_distance=8)
for row in table.rows:
    bar = "#" * min(int(abs(row.cov) * 400), 60)
    print(f"  dist {row.dist:>2d} ({row.pairs:4d} pairs): {row.cov:+.4f} {bar}")
print("adjacent vertices exclude each other (strongly negative), and the")
print("dependence is already negligible a few hops out.")

print("\nfraction of vertices with a decreasing path of length >= r:")
tail = decreasing_path_tail(GeneratorSpec("path", 100_000), trials=10,
                            r_max=12, seed=6)
for r, frac in tail:
    if r % 2 == 0:
        print(f"  r={r:2d}: {frac:.2e}")
print("the 1/r! decay is what localizes the algorithm.")

for n in (1000, 100_000, 1_000_000):
    est = rounds_stats(GeneratorSpec("path", n), trials=5, seed=7)
    print(f"\nparallel rounds on the path, n={n}: mean {est.mean:.1f}, "
          f"max {est.max_value:g}", end="")
print("\nround counts grow like log n.")
