#!/usr/bin/env python3
"""Walk through the limit constants: solve the branching-process ODE for
every preset, cross-check with the generating-function shortcut where it
applies, and compare against the analytic formulas.

Run: python demos/jamming_constants.py
"""

import math

from greedymis.branching import closed_form, limit_ratio, preset
from greedymis.pgfsolve import PgfSpec, ratio_iid_degree, ratio_single_type
from greedymis.branching import DeterministicPgf, PoissonPgf

print("The two-sided line (the path/cycle limit) jams at density")
print(f"  (1 - e^-2)/2 = {(1 - math.exp(-2)) / 2:.6f}")
print("which the machinery below should reproduce three different ways.\n")

print(f"{'preset':28s} {'ODE':>12s} {'closed form':>12s} {'pgf':>12s}")
rows = (
    [("infinite_ray_star", dict(d=d)) for d in (1, 2, 4)]
    + [("poisson_gw", dict(lam=lam)) for lam in (0.5, 1.0, 5.0)]
    + [("size_biased_gw", dict(lam=1.0))]
    + [("d_ary", dict(d=d)) for d in (2, 3)]
    + [("d_regular", dict(d=d)) for d in (3, 4)]
)
for name, kwargs in rows:
    ode = limit_ratio(preset(name, **kwargs), step=1e-4)
    exact = closed_form(name, **kwargs)
    if name == "poisson_gw":
        pgf = f"{ratio_single_type(PgfSpec(PoissonPgf(kwargs['lam']))):12.8f}"
    elif name == "d_ary":
        pgf = f"{ratio_single_type(PgfSpec(DeterministicPgf(kwargs['d']))):12.8f}"
    elif name == "d_regular":
        pgf = f"{ratio_iid_degree(PgfSpec(DeterministicPgf(kwargs['d']), iid_degree=True)):12.8f}"
    elif name == "infinite_ray_star" and kwargs["d"] == 2:
        pgf = f"{ratio_iid_degree(PgfSpec(DeterministicPgf(2), iid_degree=True)):12.8f}"
    elif name == "infinite_ray_star" and kwargs["d"] == 1:
        pgf = f"{ratio_single_type(PgfSpec(DeterministicPgf(1))):12.8f}"
    else:
        pgf = " " * 12
    label = f"{name}({', '.join(f'{k}={v:g}' for k, v in kwargs.items())})"
    print(f"{label:28s} {ode:12.8f} {exact:12.8f} {pgf}")

print("\nNotable values: the binary tree and the uniform-random-tree limit")
print("both give exactly 1/2; the 3-regular tree gives 3/8; the 4-regular")
print("tree gives 1/3.")
