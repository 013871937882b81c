"""Seeded constructors for every graph family used in the experiments.

Deterministic families (path, cycle, star, truncated d-ary tree) ignore the
generator stream; random families consume it, so identical (spec, stream)
pairs reproduce identical graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graphs import Graph, RootedTree

__all__ = [
    "GeneratorSpec",
    "GenerationRetryError",
    "generate",
    "prufer_decode",
    "prufer_encode",
    "all_free_trees",
    "path_graph",
    "cycle_graph",
    "star_graph",
]

FAMILIES = (
    "path",
    "cycle",
    "star",
    "gnp",
    "regular",
    "uniform_tree",
    "functional_mapping",
    "functional_permutation",
    "d_ary_truncated",
)

FREE_TREE_ORDER_CAP = 9


class GenerationRetryError(RuntimeError):
    """Configuration-model rejection exceeded its retry cap."""


@dataclass(frozen=True)
class GeneratorSpec:
    """Family tag plus the parameters that family needs.

    lam: mean degree for gnp; d: degree (regular) or arity (d_ary_truncated);
    depth: truncation depth for d_ary_truncated.
    """

    family: str
    n: int
    lam: float | None = None
    d: int | None = None
    depth: int | None = None
    retry_cap: int = 1000

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.family == "gnp":
            if self.lam is None or self.lam <= 0:
                raise ValueError("gnp requires lam > 0")
            if self.n and self.lam > self.n:
                raise ValueError("gnp requires lam <= n")
        if self.family == "regular":
            if self.d is None or self.d < 1:
                raise ValueError("regular requires d >= 1")
            if self.d * self.n % 2 != 0:
                raise ValueError("regular requires d*n even")
            if self.d >= self.n:
                raise ValueError("regular requires d < n")
        if self.family == "d_ary_truncated":
            if self.d is None or self.d < 1:
                raise ValueError("d_ary_truncated requires d >= 1")
            if self.depth is None or self.depth < 0:
                raise ValueError("d_ary_truncated requires depth >= 0")
        if self.family == "cycle" and 0 < self.n < 3:
            raise ValueError("cycle requires n >= 3")

    def param_label(self) -> str:
        """Compact parameter string for CSV output."""
        parts = []
        if self.lam is not None:
            parts.append(f"lam={self.lam:g}")
        if self.d is not None:
            parts.append(f"d={self.d}")
        if self.depth is not None:
            parts.append(f"depth={self.depth}")
        return ";".join(parts)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if 0 < n < 3:
        raise ValueError("cycle requires n >= 3")
    if n == 0:
        return Graph.from_edges(0, [])
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """Star on n vertices: center 0, leaves 1..n-1."""
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def _d_ary_truncated(d: int, depth: int) -> Graph:
    n = 1
    width = 1
    for _ in range(depth):
        width *= d
        n += width
    parent = np.array([-1] + [(k - 1) // d for k in range(1, n)], dtype=np.int64)
    return RootedTree(n=n, parent=parent, root=0).to_graph()


def _gnp(n: int, lam: float, rng: np.random.Generator) -> Graph:
    """Exact G(n, lam/n): edge count is Binomial(C(n,2), p), then a uniform
    subset of that many distinct pairs (the standard G(n,p)/G(n,m) mixture)."""
    n_pairs = n * (n - 1) // 2
    p = lam / n if n else 0.0
    m = int(rng.binomial(n_pairs, p)) if n_pairs else 0
    if m == 0:
        return Graph.from_edges(n, [])
    # rejection-free uniform m-subset: overdraw, dedupe (exchangeable),
    # then thin to exactly m
    keys = np.empty(0, dtype=np.int64)
    extra = 200
    while keys.shape[0] < m:
        draw = rng.integers(0, n_pairs, size=m + extra, dtype=np.int64)
        keys = np.unique(draw)
        extra *= 2
    if keys.shape[0] > m:
        keys = rng.choice(keys, size=m, replace=False)
    # decode linear pair index -> (i, j) with i < j, lexicographic layout
    i_vals = np.arange(n, dtype=np.int64)
    offsets = i_vals * (n - 1) - i_vals * (i_vals - 1) // 2
    i = np.searchsorted(offsets, keys, side="right") - 1
    j = keys - offsets[i] + i + 1
    return Graph.from_edges(n, np.stack([i, j], axis=1))


def _regular(n: int, d: int, retry_cap: int, rng: np.random.Generator) -> Graph:
    """Configuration model conditioned on simplicity: resample whole
    pairings until no loops or multi-edges appear."""
    if n == 0:
        return Graph.from_edges(0, [])
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    for _ in range(retry_cap):
        perm = rng.permutation(stubs)
        u, v = perm[0::2], perm[1::2]
        if np.any(u == v):
            continue
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        keys = np.sort(lo * n + hi)
        if np.any(keys[1:] == keys[:-1]):
            continue
        return Graph.from_edges(n, np.stack([u, v], axis=1))
    raise GenerationRetryError(
        f"no simple {d}-regular pairing on {n} vertices within {retry_cap} tries"
    )


def _uniform_tree(n: int, rng: np.random.Generator) -> Graph:
    if n <= 1:
        return Graph.from_edges(n, [])
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    seq = rng.integers(0, n, size=n - 2, dtype=np.int64)
    return prufer_decode(seq, n)


def _functional(n: int, rng: np.random.Generator, permutation: bool) -> Graph:
    if n == 0:
        return Graph.from_edges(0, [])
    if permutation:
        f = rng.permutation(n).astype(np.int64)
    else:
        f = rng.integers(0, n, size=n, dtype=np.int64)
    i = np.arange(n, dtype=np.int64)
    keep = i != f
    return Graph.from_edges(n, np.stack([i[keep], f[keep]], axis=1))


def generate(spec: GeneratorSpec, rng: np.random.Generator) -> Graph:
    """Sample (or construct) a graph from the family named by `spec`."""
    if spec.family == "path":
        return path_graph(spec.n)
    if spec.family == "cycle":
        return cycle_graph(spec.n)
    if spec.family == "star":
        return star_graph(spec.n)
    if spec.family == "gnp":
        return _gnp(spec.n, spec.lam, rng)
    if spec.family == "regular":
        return _regular(spec.n, spec.d, spec.retry_cap, rng)
    if spec.family == "uniform_tree":
        return _uniform_tree(spec.n, rng)
    if spec.family == "functional_mapping":
        return _functional(spec.n, rng, permutation=False)
    if spec.family == "functional_permutation":
        return _functional(spec.n, rng, permutation=True)
    if spec.family == "d_ary_truncated":
        return _d_ary_truncated(spec.d, spec.depth)
    raise ValueError(f"unknown family {spec.family!r}")


def prufer_decode(seq, n: int) -> Graph:
    """Decode a Pruefer sequence (length n-2 over 0..n-1) into its tree."""
    seq = np.asarray(seq, dtype=np.int64)
    if n < 2:
        raise ValueError("prufer_decode requires n >= 2")
    if seq.shape[0] != n - 2:
        raise ValueError("sequence length must be n - 2")
    if seq.size and (seq.min() < 0 or seq.max() >= n):
        raise ValueError("sequence symbol out of range")
    edges = np.empty((n - 1, 2), dtype=np.int64)
    _kernels.prufer_decode_edges(seq, n, edges)
    return Graph.from_edges(n, edges)


def prufer_encode(tree: Graph) -> np.ndarray:
    """Inverse of prufer_decode: repeatedly record the neighbor of the
    smallest current leaf."""
    n = tree.n
    if n < 2 or not tree.is_tree():
        raise ValueError("prufer_encode requires a tree with n >= 2")
    deg = tree.degrees().astype(np.int64).copy()
    adj = tree.adjacency_lists()
    removed = np.zeros(n, dtype=bool)
    seq = np.empty(max(n - 2, 0), dtype=np.int64)
    ptr = 0
    while deg[ptr] != 1:
        ptr += 1
    leaf = ptr
    for i in range(n - 2):
        removed[leaf] = True
        parent = -1
        for u in adj[leaf]:
            if not removed[u]:
                parent = u
                break
        seq[i] = parent
        deg[parent] -= 1
        deg[leaf] = 0
        if deg[parent] == 1 and parent < ptr:
            leaf = parent
        else:
            ptr += 1
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
    return seq


_free_tree_cache: dict[int, list[Graph]] = {}


def all_free_trees(n: int) -> list[Graph]:
    """One labelled representative per isomorphism class of trees on n vertices.

    Decodes all n^(n-2) Pruefer sequences and dedupes by canonical code.
    Cached per order; capped at n = 9 (4.8M decodes) because the cost is
    n^(n-2) and a dedicated free-tree enumerator is out of scope.
    """
    if not 2 <= n <= FREE_TREE_ORDER_CAP:
        raise ValueError(f"all_free_trees supports 2 <= n <= {FREE_TREE_ORDER_CAP}")
    if n in _free_tree_cache:
        return _free_tree_cache[n]
    if n == 2:
        reps = [Graph.from_edges(2, [(0, 1)])]
        _free_tree_cache[n] = reps
        return reps

    length = n - 2
    total = n**length
    chunk = min(total, 1 << 17)
    seen: dict[bytes, list[tuple[int, int]]] = {}
    edges_out = np.empty((chunk, n - 1, 2), dtype=np.int64)
    codes_out = np.empty((chunk, 2 * n), dtype=np.uint8)
    powers = n ** np.arange(length - 1, -1, -1, dtype=np.int64)
    start = 0
    while start < total:
        stop = min(start + chunk, total)
        ids = np.arange(start, stop, dtype=np.int64)
        seqs = (ids[:, None] // powers[None, :]) % n
        size = stop - start
        _kernels.prufer_decode_batch(seqs, n, edges_out[:size])
        _kernels.tree_canonical_batch(edges_out[:size], n, codes_out[:size])
        _, first = np.unique(codes_out[:size], axis=0, return_index=True)
        for b in first:
            code = codes_out[b].tobytes()
            if code not in seen:
                seen[code] = [(int(edges_out[b, e, 0]), int(edges_out[b, e, 1]))
                              for e in range(n - 1)]
        start = stop
    reps = [Graph.from_edges(n, e) for e in sorted(seen.values())]
    _free_tree_cache[n] = reps
    return reps
