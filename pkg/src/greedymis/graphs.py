"""Core graph representation, vertex labellings and tree canonical forms.

Graphs are finite, simple and undirected, with vertices 0..n-1 stored in
CSR form (``indptr``/``indices``). Arrays are frozen after construction so
instances can be shared freely across threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Graph",
    "RootedTree",
    "DisconnectedPairError",
    "NotATreeError",
    "sample_labelling",
    "distance",
    "bfs_distances",
    "components",
    "induced_subgraph",
    "canonical_code",
    "tree_centers",
    "read_edge_list",
    "write_edge_list",
]


class DisconnectedPairError(ValueError):
    """Raised when a distance query crosses two components."""


class NotATreeError(ValueError):
    """Raised when an operation requires a tree and the input is not one."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph in CSR form; adjacency lists strictly sorted."""

    n: int
    indptr: np.ndarray
    indices: np.ndarray

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        """Build a graph from an iterable of (u, v) pairs.

        Self-loops are rejected, duplicate edges collapse to one.
        """
        edges = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if edges.size:
            if edges.min() < 0 or edges.max() >= n:
                raise ValueError("edge endpoint out of range")
            if np.any(edges[:, 0] == edges[:, 1]):
                raise ValueError("self-loops are not allowed")
            lo = np.minimum(edges[:, 0], edges[:, 1])
            hi = np.maximum(edges[:, 0], edges[:, 1])
            keys = lo * n + hi
            keys = np.unique(keys)
            lo, hi = keys // n, keys % n
            src = np.concatenate([lo, hi])
            dst = np.concatenate([hi, lo])
        else:
            src = dst = np.empty(0, dtype=np.int64)
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        indptr = np.cumsum(indptr)
        g = Graph(n=n, indptr=indptr, indices=dst)
        g.indptr.setflags(write=False)
        g.indices.setflags(write=False)
        return g

    @property
    def m(self) -> int:
        """Number of (undirected) edges."""
        return self.indices.shape[0] // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edges(self) -> list[tuple[int, int]]:
        """Sorted list of edges as (u, v) with u < v."""
        out = []
        for v in range(self.n):
            for u in self.neighbors(v):
                if v < u:
                    out.append((v, int(u)))
        return out

    def adjacency_lists(self) -> list[list[int]]:
        return [[int(u) for u in self.neighbors(v)] for v in range(self.n)]

    def validate(self) -> None:
        """Check the structural invariants: simple, symmetric, sorted CSR."""
        if self.indptr.shape[0] != self.n + 1 or self.indptr[0] != 0:
            raise ValueError("malformed indptr")
        if self.indptr[-1] != self.indices.shape[0]:
            raise ValueError("indptr/indices length mismatch")
        seen = set()
        for v in range(self.n):
            nbrs = self.neighbors(v)
            if nbrs.size:
                if nbrs.min() < 0 or nbrs.max() >= self.n:
                    raise ValueError(f"neighbor of {v} out of range")
                if np.any(nbrs == v):
                    raise ValueError(f"self-loop at {v}")
                if np.any(np.diff(nbrs) <= 0):
                    raise ValueError(f"adjacency of {v} not strictly sorted")
            for u in nbrs:
                seen.add((v, int(u)))
        for v, u in seen:
            if (u, v) not in seen:
                raise ValueError(f"asymmetric edge ({v}, {u})")

    def is_tree(self) -> bool:
        if self.n == 0:
            return False
        if self.m != self.n - 1:
            return False
        return len(_component_of(self, 0)) == self.n

    def __repr__(self) -> str:  # pragma: no cover
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class RootedTree:
    """Tree given by a parent array; ``parent[root] == -1``."""

    n: int
    parent: np.ndarray
    root: int

    def to_graph(self) -> Graph:
        edges = [(v, int(self.parent[v])) for v in range(self.n) if v != self.root]
        return Graph.from_edges(self.n, edges)


def sample_labelling(n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw n iid uniform [0, 1) arrival labels, all distinct.

    Collisions at double precision are astronomically rare but would break
    strict comparisons, so duplicates are redrawn until none remain.
    """
    labels = rng.random(n)
    while n and np.unique(labels).shape[0] < n:
        _, first = np.unique(labels, return_index=True)
        dup = np.ones(n, dtype=bool)
        dup[first] = False
        labels[dup] = rng.random(int(dup.sum()))
    return labels


def distance(g: Graph, u: int, v: int) -> int:
    """BFS hop distance; raises DisconnectedPairError across components."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError("vertex out of range")
    if u == v:
        return 0
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[u] = 0
    queue = deque([u])
    while queue:
        w = queue.popleft()
        for x in g.neighbors(w):
            if dist[x] < 0:
                dist[x] = dist[w] + 1
                if x == v:
                    return int(dist[x])
                queue.append(int(x))
    raise DisconnectedPairError(f"vertices {u} and {v} lie in different components")


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """All hop distances from `source`; -1 marks unreachable vertices."""
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        w = queue.popleft()
        for x in g.neighbors(w):
            if dist[x] < 0:
                dist[x] = dist[w] + 1
                queue.append(int(x))
    return dist


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists."""
    seen = np.zeros(g.n, dtype=bool)
    out = []
    for v in range(g.n):
        if not seen[v]:
            comp = _component_of(g, v)
            seen[comp] = True
            out.append(sorted(comp))
    return out


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Subgraph induced on `vertices`, relabelled 0..k-1 in the given order."""
    vertices = list(vertices)
    pos = {v: i for i, v in enumerate(vertices)}
    edges = []
    for v in vertices:
        for u in g.neighbors(v):
            u = int(u)
            if u in pos and v < u:
                edges.append((pos[v], pos[u]))
    return Graph.from_edges(len(vertices), edges)


def _component_of(g: Graph, v: int) -> list[int]:
    seen = {v}
    queue = deque([v])
    out = [v]
    while queue:
        w = queue.popleft()
        for x in g.neighbors(w):
            x = int(x)
            if x not in seen:
                seen.add(x)
                out.append(x)
                queue.append(x)
    return out


def tree_centers(adj: list[list[int]]) -> list[int]:
    """Center (or bicenter) of a tree via leaf peeling."""
    n = len(adj)
    if n == 0:
        return []
    deg = [len(a) for a in adj]
    leaves = [v for v in range(n) if deg[v] <= 1]
    peeled = len(leaves)
    while peeled < n:
        nxt = []
        for v in leaves:
            for u in adj[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
            deg[v] = 0
        peeled += len(nxt)
        leaves = nxt
    return sorted(leaves)


def _ahu_string(adj: list[list[int]], root: int) -> bytes:
    """AHU code of the tree rooted at `root`: sorted children codes in parens."""
    # iterative post-order to avoid recursion limits on long paths
    out: dict[int, bytes] = {}
    stack = [(root, -1, False)]
    while stack:
        v, parent, expanded = stack.pop()
        if expanded:
            codes = sorted(out[u] for u in adj[v] if u != parent)
            out[v] = b"(" + b"".join(codes) + b")"
        else:
            stack.append((v, parent, True))
            for u in adj[v]:
                if u != parent:
                    stack.append((u, v, False))
    return out[root]


def canonical_code(tree: Graph) -> bytes:
    """Isomorphism-invariant code of a free tree (AHU rooted at the center).

    Two trees receive equal codes iff they are isomorphic; bicentral trees
    take the lexicographic minimum over both center roots.
    """
    if not tree.is_tree():
        raise NotATreeError("canonical_code requires a connected tree")
    adj = tree.adjacency_lists()
    centers = tree_centers(adj)
    return min(_ahu_string(adj, c) for c in centers)


def read_edge_list(path) -> Graph:
    """Read the text format: header line 'n m', then one 'u v' per line."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("expected header line 'n m'")
        n, m = int(header[0]), int(header[1])
        edges = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            u, v = line.split()
            edges.append((int(u), int(v)))
    if len(edges) != m:
        raise ValueError(f"header promises {m} edges, file has {len(edges)}")
    return Graph.from_edges(n, edges)


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")
