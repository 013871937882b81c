"""Monte-Carlo estimation of the greedy independence ratio and empirical
probes of concentration and correlation decay.

Seeding: every trial draws its generator from the master seed and the trial
index through SeedSequence spawn keys, so trials are independent streams and
results are bit-identical no matter how many worker threads run them.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .generators import GeneratorSpec, generate
from .graphs import bfs_distances, sample_labelling
from .greedy import longest_decreasing_paths, run_greedy, run_parallel

__all__ = [
    "Estimate",
    "DecayTable",
    "DecayRow",
    "ESTIMATE_CSV_HEADER",
    "DECAY_CSV_HEADER",
    "trial_rng",
    "mc_ratio",
    "variance_curve",
    "covariance_by_distance",
    "decreasing_path_tail",
    "rounds_stats",
    "estimate_csv_row",
]

ESTIMATE_CSV_HEADER = "family,n,param,trials,seed,mean,var,stderr,ci_lo,ci_hi"
DECAY_CSV_HEADER = "dist,pairs,cov"

_Z95 = 1.96
_DETERMINISTIC_FAMILIES = frozenset({"path", "cycle", "star", "d_ary_truncated"})


@dataclass(frozen=True)
class Estimate:
    mean: float
    variance: float
    stderr: float
    trials: int
    ci_lo: float
    ci_hi: float
    seed: int
    max_value: float | None = None

    @staticmethod
    def from_values(values: np.ndarray, seed: int, track_max: bool = False) -> "Estimate":
        values = np.asarray(values, dtype=np.float64)
        trials = values.shape[0]
        mean = float(values.mean())
        if trials >= 2:
            variance = float(values.var(ddof=1))
            stderr = float(np.sqrt(variance / trials))
        else:
            variance = float("nan")
            stderr = float("nan")
        return Estimate(
            mean=mean,
            variance=variance,
            stderr=stderr,
            trials=trials,
            ci_lo=mean - _Z95 * stderr,
            ci_hi=mean + _Z95 * stderr,
            seed=seed,
            max_value=float(values.max()) if track_max and trials else None,
        )


@dataclass(frozen=True)
class DecayRow:
    dist: int
    pairs: int
    cov: float


@dataclass(frozen=True)
class DecayTable:
    rows: tuple[DecayRow, ...]


def trial_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent stream for (seed, key): a counter-based split, stable
    under any execution order."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


def _run_trials(worker, trials: int, threads: int) -> list:
    results = [None] * trials
    if threads <= 1:
        for t in range(trials):
            results[t] = worker(t)
        return results
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for t, value in zip(range(trials), pool.map(worker, range(trials))):
            results[t] = value
    return results


def mc_ratio(spec: GeneratorSpec, trials: int, seed: int, threads: int = 1) -> Estimate:
    """Monte-Carlo mean of the greedy independence ratio.

    Each trial resamples the graph (random families; deterministic families
    are built once since every trial would produce the same graph) and the
    labelling.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if spec.n < 1:
        raise ValueError("the ratio needs n >= 1")
    fixed = generate(spec, trial_rng(seed)) if spec.family in _DETERMINISTIC_FAMILIES else None

    def worker(t: int) -> float:
        rng = trial_rng(seed, t)
        g = fixed if fixed is not None else generate(spec, rng)
        labels = sample_labelling(g.n, rng)
        return run_greedy(g, labels).mis_size / g.n

    values = np.array(_run_trials(worker, trials, threads))
    return Estimate.from_values(values, seed=seed)


def variance_curve(
    spec: GeneratorSpec,
    n_values,
    trials: int,
    seed: int,
    threads: int = 1,
) -> list[tuple[int, float]]:
    """Empirical Var[ratio] per order n (the variance decay probe)."""
    out = []
    for i, n in enumerate(n_values):
        spec_n = replace(spec, n=int(n))
        fixed = (generate(spec_n, trial_rng(seed))
                 if spec.family in _DETERMINISTIC_FAMILIES else None)

        def worker(t: int, _spec=spec_n, _i=i, _fixed=fixed) -> float:
            rng = trial_rng(seed, _i, t)
            g = _fixed if _fixed is not None else generate(_spec, rng)
            labels = sample_labelling(g.n, rng)
            return run_greedy(g, labels).mis_size / g.n

        values = np.array(_run_trials(worker, trials, threads))
        out.append((int(n), float(values.var(ddof=1)) if trials >= 2 else float("nan")))
    return out


def covariance_by_distance(
    spec: GeneratorSpec,
    trials: int,
    pair_samples: int,
    seed: int,
    max_distance: int | None = None,
    threads: int = 1,
) -> DecayTable:
    """Estimated covariance of the two occupancy indicators of uniformly
    sampled vertex pairs, bucketed by hop distance.

    The graph is sampled once; trials rerandomize the labelling. Pairs in
    different components are dropped. With `max_distance` set, all larger
    distances collapse into that final bucket.
    """
    if trials < 2:
        raise ValueError("covariance needs at least 2 trials")
    g = generate(spec, trial_rng(seed, 0, 0))
    rng_pairs = trial_rng(seed, 0, 1)
    u = rng_pairs.integers(0, g.n, size=pair_samples)
    v = rng_pairs.integers(0, g.n, size=pair_samples)

    dist = np.empty(pair_samples, dtype=np.int64)
    cache: dict[int, np.ndarray] = {}
    for i in range(pair_samples):
        src = int(u[i])
        if src not in cache:
            cache[src] = bfs_distances(g, src)
        dist[i] = cache[src][v[i]]
    keep = dist >= 0
    u, v, dist = u[keep], v[keep], dist[keep]
    if max_distance is not None:
        dist = np.minimum(dist, max_distance)

    def worker(t: int):
        rng = trial_rng(seed, 1, t)
        labels = sample_labelling(g.n, rng)
        occ = run_greedy(g, labels).occupied
        return occ[u].astype(np.float64), occ[v].astype(np.float64)

    su = np.zeros(u.shape[0])
    sv = np.zeros(u.shape[0])
    suv = np.zeros(u.shape[0])
    for xu, xv in _run_trials(worker, trials, threads):
        su += xu
        sv += xv
        suv += xu * xv
    cov = suv / trials - (su / trials) * (sv / trials)

    rows = []
    for d in np.unique(dist):
        mask = dist == d
        rows.append(DecayRow(dist=int(d), pairs=int(mask.sum()), cov=float(cov[mask].mean())))
    return DecayTable(rows=tuple(rows))


def decreasing_path_tail(
    spec: GeneratorSpec,
    trials: int,
    r_max: int,
    seed: int,
    threads: int = 1,
) -> list[tuple[int, float]]:
    """Fraction of vertices whose longest strictly decreasing path reaches
    length >= r, for r = 0..r_max, averaged over trials."""
    if spec.n < 1:
        raise ValueError("tail needs n >= 1")
    fixed = generate(spec, trial_rng(seed)) if spec.family in _DETERMINISTIC_FAMILIES else None

    def worker(t: int) -> np.ndarray:
        rng = trial_rng(seed, t)
        g = fixed if fixed is not None else generate(spec, rng)
        labels = sample_labelling(g.n, rng)
        depths = longest_decreasing_paths(g, labels)
        counts = np.bincount(np.minimum(depths, r_max + 1), minlength=r_max + 2)
        # survival function of the depth distribution
        tail = counts[::-1].cumsum()[::-1] / g.n
        return tail[: r_max + 1]

    tails = np.array(_run_trials(worker, trials, threads))
    mean_tail = tails.mean(axis=0)
    return [(r, float(mean_tail[r])) for r in range(r_max + 1)]


def rounds_stats(spec: GeneratorSpec, trials: int, seed: int, threads: int = 1) -> Estimate:
    """Mean (and max, in `max_value`) of the parallel round count."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    fixed = generate(spec, trial_rng(seed)) if spec.family in _DETERMINISTIC_FAMILIES else None

    def worker(t: int) -> float:
        rng = trial_rng(seed, t)
        g = fixed if fixed is not None else generate(spec, rng)
        labels = sample_labelling(g.n, rng)
        return float(run_parallel(g, labels).rounds)

    values = np.array(_run_trials(worker, trials, threads))
    return Estimate.from_values(values, seed=seed, track_max=True)


def estimate_csv_row(spec: GeneratorSpec, est: Estimate) -> str:
    return ",".join([
        spec.family,
        str(spec.n),
        spec.param_label(),
        str(est.trials),
        str(est.seed),
        repr(est.mean),
        repr(est.variance),
        repr(est.stderr),
        repr(est.ci_lo),
        repr(est.ci_hi),
    ])
