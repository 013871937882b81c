"""Multitype branching processes and their fundamental ODE system.

A simple branching process is specified by a finite type set, a root-type
distribution and, per ordered type pair (k, j), the generating function of
the number of type-j children of a type-k node. The per-type occupancy
functions y_k solve

    y_k'(x) = prod_j G_kj(1 - y_j(x)),      y_k(0) = 0,

and the limit greedy independence ratio is sum_k y_k(1) * root(k).

The right-hand side is the Binomial-thinning mixture evaluated in closed
form: averaging (1 - y/x)^Bin(N, x) over the thinning gives G(1 - y), which
removes the apparent singularity at x = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

__all__ = [
    "Pgf",
    "DeterministicPgf",
    "PoissonPgf",
    "CoeffsPgf",
    "BranchingSpec",
    "OdeSolution",
    "OdeDivergenceError",
    "rhs",
    "solve",
    "limit_ratio",
    "occupancy_at",
    "preset",
    "closed_form",
    "PRESET_NAMES",
    "closed_form_table",
]

_TOL = 1e-12


class OdeDivergenceError(RuntimeError):
    """A trajectory left the invariant region 0 <= y <= x during a solve."""


class Pgf:
    """Probability generating function of a nonnegative integer law."""

    def __call__(self, z: float) -> float:  # pragma: no cover
        raise NotImplementedError

    def derivative(self, z: float) -> float:  # pragma: no cover
        raise NotImplementedError

    def kernel_encoding(self) -> tuple[int, float, list[float]]:  # pragma: no cover
        raise NotImplementedError


@dataclass(frozen=True)
class DeterministicPgf(Pgf):
    """Always exactly c children: G(z) = z^c."""

    c: int

    def __post_init__(self):
        if self.c < 0:
            raise ValueError("child count must be nonnegative")

    def __call__(self, z: float) -> float:
        return z**self.c

    def derivative(self, z: float) -> float:
        return self.c * z ** (self.c - 1) if self.c else 0.0

    def kernel_encoding(self):
        return _kernels.PGF_DETERMINISTIC, float(self.c), []


@dataclass(frozen=True)
class PoissonPgf(Pgf):
    """Poisson(lam) children: G(z) = exp(lam (z - 1))."""

    lam: float

    def __post_init__(self):
        if self.lam <= 0:
            raise ValueError("lam must be positive")

    def __call__(self, z: float) -> float:
        return math.exp(self.lam * (z - 1.0))

    def derivative(self, z: float) -> float:
        return self.lam * math.exp(self.lam * (z - 1.0))

    def kernel_encoding(self):
        return _kernels.PGF_POISSON, self.lam, []


@dataclass(frozen=True)
class CoeffsPgf(Pgf):
    """Finite-support law given by its probability vector."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.coeffs):
            raise ValueError("probabilities must be nonnegative")
        if abs(sum(self.coeffs) - 1.0) > _TOL:
            raise ValueError("probabilities must sum to 1")

    def __call__(self, z: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self, z: float) -> float:
        acc = 0.0
        for d in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * z + d * self.coeffs[d]
        return acc

    def kernel_encoding(self):
        return _kernels.PGF_COEFFS, 0.0, list(self.coeffs)


@dataclass(frozen=True)
class BranchingSpec:
    """Type list, root distribution and offspring pgf matrix.

    `offspring[(k, j)]` is the pgf of type-j children of a type-k node;
    missing entries mean no such children (pgf identically 1).
    """

    types: tuple[str, ...]
    root_dist: dict[str, float]
    offspring: dict[tuple[str, str], Pgf]
    name: str = ""

    def __post_init__(self):
        if len(set(self.types)) != len(self.types):
            raise ValueError("duplicate type names")
        if abs(sum(self.root_dist.values()) - 1.0) > _TOL:
            raise ValueError("root distribution must sum to 1")
        for t, p in self.root_dist.items():
            if t not in self.types or p < 0:
                raise ValueError(f"bad root entry {t!r}")
        for (k, j) in self.offspring:
            if k not in self.types or j not in self.types:
                raise ValueError(f"offspring entry for unknown types ({k}, {j})")

    def root_vector(self) -> np.ndarray:
        return np.array([self.root_dist.get(t, 0.0) for t in self.types])

    def kernel_encoding(self):
        k_types = len(self.types)
        kinds = np.zeros((k_types, k_types), dtype=np.int64)
        params = np.zeros((k_types, k_types), dtype=np.float64)
        cptr = [0]
        cdata: list[float] = []
        for a, ta in enumerate(self.types):
            for b, tb in enumerate(self.types):
                pgf = self.offspring.get((ta, tb))
                if pgf is not None:
                    kind, param, coeffs = pgf.kernel_encoding()
                    kinds[a, b] = kind
                    params[a, b] = param
                    cdata.extend(coeffs)
                cptr.append(len(cdata))
        return kinds, params, np.array(cptr, dtype=np.int64), np.array(cdata, dtype=np.float64)


@dataclass(frozen=True)
class OdeSolution:
    """Trajectories on the uniform grid plus the mixed ratio at x = 1."""

    spec: BranchingSpec
    grid: np.ndarray
    trajectories: np.ndarray  # shape (len(grid), n_types)
    step: float
    ratio: float = field(init=False)

    def __post_init__(self):
        mixed = float(self.trajectories[-1] @ self.spec.root_vector())
        object.__setattr__(self, "ratio", mixed)

    def occupancy(self) -> np.ndarray:
        """Root occupancy probability curve sum_k y_k(x) root(k)."""
        return self.trajectories @ self.spec.root_vector()


def rhs(spec: BranchingSpec, x: float, y) -> np.ndarray:
    """Derivative vector y_k' = prod_j G_kj(1 - y_j). The x argument is part
    of the contract (the thinned mixture depends on it before factorization)
    but cancels in the factorized form."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (len(spec.types),):
        raise ValueError("y has wrong shape")
    if np.any(y < -_TOL) or np.any(y > 1 + _TOL):
        raise ValueError("y outside [0, 1]")
    out = np.empty(len(spec.types))
    for a, ta in enumerate(spec.types):
        acc = 1.0
        for b, tb in enumerate(spec.types):
            pgf = spec.offspring.get((ta, tb))
            if pgf is not None:
                acc *= pgf(1.0 - float(y[b]))
        out[a] = acc
    return out


def solve(spec: BranchingSpec, step: float = 1e-4) -> OdeSolution:
    """Fixed-step classical RK4 from x = 0 to 1.

    `step` must divide 1 exactly (step = 1/M) so the grid is uniform and
    reproducible. Any trajectory leaving [0, x + 10 step] aborts the solve.
    """
    m_steps = round(1.0 / step)
    if m_steps < 1 or abs(m_steps * step - 1.0) > 1e-9:
        raise ValueError("step must equal 1/M for an integer M")
    kinds, params, cptr, cdata = spec.kernel_encoding()
    traj, failed = _kernels.rk4_branching(kinds, params, cptr, cdata, m_steps)
    if failed >= 0:
        raise OdeDivergenceError(
            f"trajectory left the invariant region at step {failed} "
            f"(x = {failed / m_steps:.6f}); y = {traj[failed + 1]}"
        )
    grid = np.linspace(0.0, 1.0, m_steps + 1)
    return OdeSolution(spec=spec, grid=grid, trajectories=traj, step=1.0 / m_steps)


def limit_ratio(spec: BranchingSpec, step: float = 1e-4) -> float:
    """Greedy independence ratio of the branching-process limit."""
    return solve(spec, step).ratio


def occupancy_at(spec: BranchingSpec, x: float, step: float = 1e-4) -> float:
    """Probability the root is occupied at time x (labels above x ignored).

    x must lie on the solve grid; interpolation is refused.
    """
    sol = solve(spec, step)
    idx = x / sol.step
    if abs(idx - round(idx)) > 1e-9:
        raise ValueError(f"x = {x} is not on the grid with step {sol.step}")
    return float(sol.occupancy()[round(idx)])


def preset(name: str, lam: float | None = None, d: int | None = None) -> BranchingSpec:
    """Named limits of the analysed graph families.

    infinite_ray_star(d): d rays glued at the root (d=1 the half line,
    d=2 the two-sided line); poisson_gw(lam): Poisson Galton-Watson;
    size_biased_gw(lam): spine vertices carry one spine child plus
    Poisson(lam) tree children (limit of uniform random trees at lam=1);
    d_ary(d): every node has d children; d_regular(d): root degree d,
    every other node d-1 further children.
    """
    if name == "infinite_ray_star":
        if d is None or d < 1:
            raise ValueError("infinite_ray_star requires d >= 1")
        return BranchingSpec(
            types=("root", "branch"),
            root_dist={"root": 1.0},
            offspring={
                ("root", "branch"): DeterministicPgf(d),
                ("branch", "branch"): DeterministicPgf(1),
            },
            name=f"infinite_ray_star(d={d})",
        )
    if name == "poisson_gw":
        if lam is None or lam <= 0:
            raise ValueError("poisson_gw requires lam > 0")
        return BranchingSpec(
            types=("node",),
            root_dist={"node": 1.0},
            offspring={("node", "node"): PoissonPgf(lam)},
            name=f"poisson_gw(lam={lam:g})",
        )
    if name == "size_biased_gw":
        if lam is None or not 0 < lam <= 1:
            raise ValueError("size_biased_gw requires 0 < lam <= 1")
        return BranchingSpec(
            types=("spine", "tree"),
            root_dist={"spine": 1.0},
            offspring={
                ("spine", "spine"): DeterministicPgf(1),
                ("spine", "tree"): PoissonPgf(lam),
                ("tree", "tree"): PoissonPgf(lam),
            },
            name=f"size_biased_gw(lam={lam:g})",
        )
    if name == "d_ary":
        if d is None or d < 2:
            raise ValueError("d_ary requires d >= 2 (d = 1 is infinite_ray_star(1))")
        return BranchingSpec(
            types=("node",),
            root_dist={"node": 1.0},
            offspring={("node", "node"): DeterministicPgf(d)},
            name=f"d_ary(d={d})",
        )
    if name == "d_regular":
        if d is None or d < 3:
            raise ValueError("d_regular requires d >= 3")
        return BranchingSpec(
            types=("root", "other"),
            root_dist={"root": 1.0},
            offspring={
                ("root", "other"): DeterministicPgf(d),
                ("other", "other"): DeterministicPgf(d - 1),
            },
            name=f"d_regular(d={d})",
        )
    raise ValueError(f"unknown preset {name!r}")


PRESET_NAMES = ("infinite_ray_star", "poisson_gw", "size_biased_gw", "d_ary", "d_regular")


def closed_form(name: str, lam: float | None = None, d: int | None = None) -> float:
    """Analytic limit ratios, used as regression oracles for the solver."""
    if name == "infinite_ray_star":
        if d is None or d < 1:
            raise ValueError("infinite_ray_star requires d >= 1")
        return (1.0 - math.exp(-d)) / d
    if name == "poisson_gw":
        if lam is None or lam <= 0:
            raise ValueError("poisson_gw requires lam > 0")
        return math.log1p(lam) / lam
    if name == "size_biased_gw":
        if lam is None or not 0 < lam <= 1:
            raise ValueError("size_biased_gw requires 0 < lam <= 1")
        return 1.0 - (1.0 + lam) ** (-1.0 / lam)
    if name == "d_ary":
        if d is None or d < 2:
            raise ValueError("d_ary requires d >= 2")
        return 1.0 - d ** (-1.0 / (d - 1))
    if name == "d_regular":
        if d is None or d < 3:
            raise ValueError("d_regular requires d >= 3")
        return 0.5 * (1.0 - (d - 1) ** (-2.0 / (d - 2)))
    raise ValueError(f"unknown closed form {name!r}")


def closed_form_table() -> list[dict]:
    """All named constants with their formulas, one row per parameter choice."""
    rows = []
    for d in range(1, 7):
        rows.append({
            "name": f"infinite_ray_star(d={d})",
            "formula": "(1 - exp(-d)) / d",
            "value": closed_form("infinite_ray_star", d=d),
        })
    for lam in (0.5, 1.0, 2.0, 5.0):
        rows.append({
            "name": f"poisson_gw(lam={lam:g})",
            "formula": "log(1 + lam) / lam",
            "value": closed_form("poisson_gw", lam=lam),
        })
    rows.append({
        "name": "size_biased_gw(lam=1)",
        "formula": "1 - (1 + lam)^(-1/lam)",
        "value": closed_form("size_biased_gw", lam=1.0),
    })
    for d in range(2, 7):
        rows.append({
            "name": f"d_ary(d={d})",
            "formula": "1 - d^(-1/(d-1))",
            "value": closed_form("d_ary", d=d),
        })
    for d in range(3, 7):
        rows.append({
            "name": f"d_regular(d={d})",
            "formula": "(1 - (d-1)^(-2/(d-2))) / 2",
            "value": closed_form("d_regular", d=d),
        })
    return rows
