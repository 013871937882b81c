"""The random greedy MIS process: sequential scan, parallel sink removal,
past sets and path counting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graphs import Graph

__all__ = [
    "GreedyResult",
    "PathCountOverflowError",
    "run_greedy",
    "run_parallel",
    "past_set",
    "longest_decreasing_path_from",
    "longest_decreasing_paths",
    "count_paths_from",
    "check_greedy_result",
]


class PathCountOverflowError(RuntimeError):
    """Path enumeration exceeded the configured count cap."""


@dataclass(frozen=True)
class GreedyResult:
    occupied: np.ndarray
    mis_size: int
    rounds: int | None = None


def _check_labels(g: Graph, labels: np.ndarray) -> np.ndarray:
    labels = np.asarray(labels, dtype=np.float64)
    if labels.shape != (g.n,):
        raise ValueError(f"expected {g.n} labels, got shape {labels.shape}")
    return labels


def run_greedy(g: Graph, labels: np.ndarray) -> GreedyResult:
    """Scan vertices by increasing label; occupy unless a neighbor already is.

    Deterministic given (g, labels); only the label order matters, so rank
    labels (a permutation) give identical output.
    """
    labels = _check_labels(g, labels)
    order = np.argsort(labels, kind="stable").astype(np.int64)
    occupied = _kernels.greedy_scan(g.indptr, g.indices, order)
    return GreedyResult(occupied=occupied, mis_size=int(occupied.sum()))


def run_parallel(g: Graph, labels: np.ndarray) -> GreedyResult:
    """Round-based variant: repeatedly occupy all label-local-minima (sinks)
    and delete them with their neighbors. Occupies the same set as
    run_greedy; the round count is the extra deliverable."""
    labels = _check_labels(g, labels)
    occupied, rounds = _kernels.parallel_sweep(g.indptr, g.indices, labels)
    return GreedyResult(occupied=occupied, mis_size=int(occupied.sum()), rounds=int(rounds))


def past_set(g: Graph, labels: np.ndarray, v: int) -> set[int]:
    """Vertices reachable from v along strictly label-decreasing paths
    (v included): the only randomness that can influence v's occupancy."""
    labels = _check_labels(g, labels)
    if not 0 <= v < g.n:
        raise ValueError("vertex out of range")
    seen = {v}
    stack = [v]
    while stack:
        w = stack.pop()
        for u in g.neighbors(w):
            u = int(u)
            if u not in seen and labels[u] < labels[w]:
                seen.add(u)
                stack.append(u)
    return seen


def longest_decreasing_paths(g: Graph, labels: np.ndarray) -> np.ndarray:
    """Longest strictly decreasing path length from every vertex at once."""
    labels = _check_labels(g, labels)
    order = np.argsort(labels, kind="stable").astype(np.int64)
    return _kernels.longest_decreasing_all(g.indptr, g.indices, labels, order)


def longest_decreasing_path_from(g: Graph, labels: np.ndarray, v: int) -> int:
    """Maximum k over strictly decreasing paths starting at v; 0 at a local
    label minimum. Labels strictly decrease along such a path, so it never
    revisits a vertex and one DAG pass suffices."""
    if not 0 <= v < g.n:
        raise ValueError("vertex out of range")
    return int(longest_decreasing_paths(g, labels)[v])


def count_paths_from(g: Graph, v: int, r: int, cap: int = 10_000_000) -> int:
    """Number of simple paths of length 1..r starting at v (each vertex
    sequence counted once). DFS with an on-path marker; exponential in the
    worst case, intended for small r."""
    if not 0 <= v < g.n:
        raise ValueError("vertex out of range")
    if r < 0:
        raise ValueError("r must be nonnegative")
    on_path = np.zeros(g.n, dtype=bool)
    on_path[v] = True
    count = 0

    def dfs(w: int, depth: int) -> None:
        nonlocal count
        if depth == r:
            return
        for u in g.neighbors(w):
            u = int(u)
            if not on_path[u]:
                count += 1
                if count > cap:
                    raise PathCountOverflowError(f"more than {cap} paths from {v}")
                on_path[u] = True
                dfs(u, depth + 1)
                on_path[u] = False

    dfs(v, 0)
    return count


def check_greedy_result(g: Graph, result: GreedyResult) -> None:
    """Assert independence and maximality of an occupied set."""
    occ = result.occupied
    if int(occ.sum()) != result.mis_size:
        raise AssertionError("mis_size does not match the occupied mask")
    for v in range(g.n):
        nbrs = g.neighbors(v)
        if occ[v]:
            if nbrs.size and np.any(occ[nbrs]):
                raise AssertionError(f"edge inside the independent set at {v}")
        else:
            if not nbrs.size or not np.any(occ[nbrs]):
                raise AssertionError(f"unoccupied vertex {v} has no occupied neighbor")
