"""Generating-function shortcut for the limit ratio, bypassing the ODE solve.

For a single-type process with offspring pgf g, the root vacancy h(x)
(the probability the root is unoccupied at time x) solves

    integral_h(x)^1 dz / g(z) = x,          y(x) = 1 - h(x),

and for a tree whose vertex degrees are iid with pgf g (no degree 0), the
branch vacancy solves

    integral_h(x)^1 z dz / g(z) = x,        y_root(x) = (1 - h(x)^2) / 2.

Both equations are solved by bisection on h; the integral is evaluated by
adaptive quadrature. This route is kept fully independent of the ODE
integrator so the two can cross-check each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from scipy.integrate import quad

from .branching import Pgf

__all__ = [
    "PgfSpec",
    "vacancy",
    "branch_vacancy",
    "ratio_single_type",
    "ratio_iid_degree",
]

_QUAD_TOL = 1e-12
_ROOT_TOL = 1e-10
_BISECTION_ITERS = 60
_H_FLOOR = 1e-6


@dataclass(frozen=True)
class PgfSpec:
    """Offspring/degree pgf plus the flag selecting the iid-degree variant.

    The iid-degree route requires degree 0 to have probability 0.
    """

    pgf: Pgf
    iid_degree: bool = False

    def __post_init__(self):
        if abs(self.pgf(1.0) - 1.0) > 1e-12:
            raise ValueError("pgf must satisfy g(1) = 1")
        if self.iid_degree and self.pgf(0.0) != 0.0:
            raise ValueError("iid-degree variant requires P(degree = 0) = 0")


def _solve_threshold(g, weight_z: bool, x: float) -> float:
    """Root h of integral_h^1 w(z) dz / g(z) = x with w(z) = z or 1.

    The integral is decreasing in h and equals 0 at h = 1, so bisection is
    unconditionally safe once a lower bracket is found. A bracket always
    exists for x <= 1: g <= 1 on [0, 1] gives integrand >= 1 unweighted,
    and with no degree-0 mass g(z) <= z gives z/g(z) >= 1. The search
    still refuses to enter the potential singularity below the floor.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0:
        return 1.0

    if weight_z:
        integrand = lambda z: z / g(z)
    else:
        integrand = lambda z: 1.0 / g(z)

    def remaining(h: float) -> float:
        value, _ = quad(integrand, h, 1.0, epsabs=_QUAD_TOL, epsrel=_QUAD_TOL, limit=200)
        return value - x

    lo = 0.5
    while remaining(lo) < 0.0:
        lo *= 0.5
        if lo < _H_FLOOR:
            raise ValueError(
                "integral from the singular region is needed to reach x; "
                "not expected for any supported pgf with x <= 1"
            )
    hi = 1.0
    for _ in range(_BISECTION_ITERS):
        mid = 0.5 * (lo + hi)
        if remaining(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
    h = 0.5 * (lo + hi)
    if abs(remaining(h)) > _ROOT_TOL:
        raise RuntimeError(f"bisection failed to reach tolerance at x = {x}")
    return h


def vacancy(spec: PgfSpec, x: float) -> float:
    """Root vacancy h(x) of a single-type process; y(x) = 1 - h(x)."""
    return _solve_threshold(spec.pgf, weight_z=False, x=x)


def branch_vacancy(spec: PgfSpec, x: float) -> float:
    """Branch vacancy of the iid-degree tree (z-weighted integral)."""
    if not spec.iid_degree:
        raise ValueError("branch_vacancy requires an iid-degree spec")
    return _solve_threshold(spec.pgf, weight_z=True, x=x)


def ratio_single_type(spec: PgfSpec) -> float:
    """Limit ratio of the single-type process: 1 - h(1)."""
    return 1.0 - vacancy(spec, 1.0)


def ratio_iid_degree(spec: PgfSpec) -> float:
    """Limit ratio of the iid-degree tree: (1 - h(1)^2) / 2."""
    h = branch_vacancy(spec, 1.0)
    return 0.5 * (1.0 - h * h)
