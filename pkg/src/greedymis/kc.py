"""KC-transformations on trees and the exhaustive small-order verification
of the path-minimality theorem and its supporting inequalities.

A KC-transformation picks a bare path (all interior degrees 2) between x
and y and rewires the non-path neighbors of y onto x. It never changes the
vertex set, so per-vertex quantities can be compared before and after.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    exact_expected_mis,
    path_expectation,
    total_shatter_weight,
    vertex_shatter_weight,
)
from .generators import all_free_trees
from .graphs import Graph, canonical_code

__all__ = [
    "BarePath",
    "KcPartition",
    "find_bare_paths",
    "kc_transform",
    "is_proper",
    "leaf_count",
    "kc_partition",
    "VerificationReport",
    "verify_kc_weights",
    "verify_path_minimum",
]


@dataclass(frozen=True)
class BarePath:
    """Endpoints plus the ordered interior of a bare x-y path."""

    x: int
    y: int
    interior: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.interior) + 1

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.x, *self.interior, self.y)


@dataclass(frozen=True)
class KcPartition:
    """A: separated from y by x; B: separated from x by y; P: the path."""

    a: frozenset[int]
    b: frozenset[int]
    p: frozenset[int]


def _tree_path(tree: Graph, x: int, y: int) -> list[int]:
    """Unique x-y path in a tree (BFS parents)."""
    parent = {x: -1}
    queue = [x]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        if v == y:
            break
        for u in tree.neighbors(v):
            u = int(u)
            if u not in parent:
                parent[u] = v
                queue.append(u)
    path = [y]
    while path[-1] != x:
        path.append(parent[path[-1]])
    return path[::-1]


def _require_tree(tree: Graph) -> None:
    if not tree.is_tree():
        raise ValueError("operation requires a tree")


def _bare_path_or_none(tree: Graph, x: int, y: int) -> BarePath | None:
    path = _tree_path(tree, x, y)
    for v in path[1:-1]:
        if tree.degree(v) != 2:
            return None
    return BarePath(x=x, y=y, interior=tuple(path[1:-1]))


def find_bare_paths(tree: Graph) -> list[BarePath]:
    """All unordered {x, y} pairs whose connecting path is bare; adjacent
    pairs (empty interior) count."""
    _require_tree(tree)
    out = []
    for x in range(tree.n):
        for y in range(x + 1, tree.n):
            bp = _bare_path_or_none(tree, x, y)
            if bp is not None:
                out.append(bp)
    return out


def kc_transform(tree: Graph, x: int, y: int) -> Graph:
    """Rewire the non-path neighbors of y onto x along the bare x-y path."""
    _require_tree(tree)
    bp = _bare_path_or_none(tree, x, y)
    if bp is None:
        raise ValueError(f"({x}, {y}) is not a bare-path pair")
    z = bp.vertices[-2]  # neighbor of y on the path (x itself when adjacent)
    moved = [int(u) for u in tree.neighbors(y) if u != z]
    edges = [(u, v) for u, v in tree.edges() if not (y in (u, v) and (u in moved or v in moved))]
    edges.extend((x, u) for u in moved)
    out = Graph.from_edges(tree.n, edges)
    if not out.is_tree():  # cannot happen for a bare pair; guards the rewiring
        raise AssertionError("KC output failed tree validation")
    return out


def leaf_count(tree: Graph) -> int:
    return int((tree.degrees() == 1).sum())


def is_proper(tree: Graph, x: int, y: int) -> bool:
    """Proper iff neither endpoint is a leaf; exactly then the transform
    raises the leaf count (by one), otherwise the result is isomorphic."""
    _require_tree(tree)
    if _bare_path_or_none(tree, x, y) is None:
        raise ValueError(f"({x}, {y}) is not a bare-path pair")
    return tree.degree(x) > 1 and tree.degree(y) > 1


def kc_partition(tree: Graph, x: int, y: int) -> KcPartition:
    """Partition V into A (cut off by x), B (cut off by y) and the path."""
    _require_tree(tree)
    bp = _bare_path_or_none(tree, x, y)
    if bp is None:
        raise ValueError(f"({x}, {y}) is not a bare-path pair")
    p = set(bp.vertices)

    def side(anchor: int, other: int) -> frozenset[int]:
        # vertices whose every path to `other` passes via `anchor`
        blocked = {anchor}
        reach = {other}
        stack = [other]
        while stack:
            v = stack.pop()
            for u in tree.neighbors(v):
                u = int(u)
                if u not in blocked and u not in reach:
                    reach.add(u)
                    stack.append(u)
        return frozenset(v for v in range(tree.n) if v != anchor and v not in reach)

    return KcPartition(a=side(x, y), b=side(y, x), p=frozenset(p))


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    checked: int
    violations: list
    detail: dict


def verify_kc_weights(n_max: int) -> VerificationReport:
    """Exhaustively check, in exact arithmetic, for every free tree of order
    <= n_max and every bare path: the aggregate shatter-weight inequality,
    the per-vertex inequality on A and B, the summed inequality over the
    path, and the leaf-count grading."""
    if n_max > 9:
        raise ValueError("verification capped at order 9")
    checked = 0
    violations = []
    for n in range(2, n_max + 1):
        for tree in all_free_trees(n):
            before_total = total_shatter_weight(tree)
            before_vertex = [vertex_shatter_weight(tree, v) for v in range(n)]
            code = canonical_code(tree)
            leaves = leaf_count(tree)
            for bp in find_bare_paths(tree):
                checked += 1
                after = kc_transform(tree, bp.x, bp.y)
                witness = (n, tree.edges(), bp.x, bp.y)
                if total_shatter_weight(after) < before_total:
                    violations.append(("aggregate", *witness))
                part = kc_partition(tree, bp.x, bp.y)
                for v in sorted(part.a | part.b):
                    if vertex_shatter_weight(after, v) < before_vertex[v]:
                        violations.append(("per-vertex", v, *witness))
                path_after = sum(
                    (vertex_shatter_weight(after, v) for v in part.p), Fraction(0)
                )
                path_before = sum((before_vertex[v] for v in part.p), Fraction(0))
                if path_after < path_before:
                    violations.append(("path-sum", *witness))
                if is_proper(tree, bp.x, bp.y):
                    if leaf_count(after) != leaves + 1:
                        violations.append(("grading-proper", *witness))
                elif canonical_code(after) != code:
                    violations.append(("grading-improper", *witness))
    return VerificationReport(
        ok=not violations,
        checked=checked,
        violations=violations,
        detail={"n_max": n_max},
    )


def verify_path_minimum(n: int) -> VerificationReport:
    """Exact comparison of the expected greedy MIS cardinality over all free
    trees of order n; reports the sorted table and whether the path attains
    the (unique or tied) minimum."""
    trees = all_free_trees(n) if n >= 2 else [Graph.from_edges(max(n, 0), [])]
    path_code = canonical_code(
        Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    ) if n >= 1 else b""
    table = []
    for tree in trees:
        value = exact_expected_mis(tree)
        table.append((value, canonical_code(tree)))
    table.sort(key=lambda row: (row[0], row[1]))
    min_value = table[0][0] if table else Fraction(0)
    path_value = path_expectation(n)
    attained = any(code == path_code for value, code in table if value == min_value)
    unique = sum(1 for value, _ in table if value == min_value) == 1
    violations = []
    if n >= 1 and (min_value != path_value or not attained):
        violations.append(("path-not-minimal", n, str(min_value), str(path_value)))
    return VerificationReport(
        ok=not violations,
        checked=len(table),
        violations=violations,
        detail={
            "n": n,
            "table": table,
            "minimum_unique": unique,
            "path_value": path_value,
        },
    )
