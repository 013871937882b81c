#!/usr/bin/env python3
"""Exact expected greedy MIS cardinalities on trees: the path recursion,
the shattering recursion against the brute-force oracle, and the sorted
table over all free trees of one order showing the path at the bottom.

Run: python demos/tree_extremality.py
"""

from fractions import Fraction

from greedymis.exact import (
    brute_force_expected_mis,
    exact_expected_mis,
    path_expectation,
)
from greedymis.generators import star_graph
from greedymis.kc import verify_path_minimum

print("Path expectations a(n) from the first-pick recursion:")
for n in range(1, 11):
    v = path_expectation(n)
    print(f"  n={n:2d}: {str(v):>10s} = {float(v):.6f}  (per vertex {float(v)/n:.6f})")
print(f"  The per-vertex values drift toward (1 - e^-2)/2 = 0.432332.\n")

print("Cross-check against the n!-permutation oracle on the stars:")
for n in (4, 6, 8):
    rec = exact_expected_mis(star_graph(n))
    oracle = brute_force_expected_mis(star_graph(n))
    assert rec == oracle == Fraction(1 + (n - 1) ** 2, n)
    print(f"  star on {n}: recursion {rec} == enumeration {oracle}")

N = 7
print(f"\nAll free trees of order {N}, sorted by exact expectation:")
report = verify_path_minimum(N)
path_value = path_expectation(N)
for rank, (value, code) in enumerate(report.detail["table"]):
    tag = "  <- the path" if value == path_value and rank == 0 else ""
    print(f"  {rank:2d}. {str(value):>8s} = {float(value):.5f}  {code.decode()}{tag}")
print(f"\nminimum unique: {report.detail['minimum_unique']}; the star sits at the top.")
assert report.ok
