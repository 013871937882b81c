"""Exact expected greedy MIS cardinality on paths, trees and forests.

Everything here runs in exact rational arithmetic (stdlib Fraction): the
tree-minimality comparisons must not be decided by floating-point near-ties.

The path table obeys the first-pick recursion

    a(n) = 1 + (2/n) * sum_{i=1..n} a(i-2),     a(-1) = a(0) = 0,

where a(n) is the expected cardinality on the n-vertex path: conditioning
on the first arriving vertex splits the path into two shorter paths whose
residual arrival orders are again uniform. The same conditioning on general
trees is the shattering recursion implemented by exact_expected_mis.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph, canonical_code, components, induced_subgraph

__all__ = [
    "path_expectation",
    "path_expectation_table",
    "window_sum",
    "shatter_components",
    "shatter_orders",
    "vertex_shatter_weight",
    "total_shatter_weight",
    "exact_expected_mis",
    "brute_force_expected_mis",
    "ClaimReport",
    "check_monotone_subadditive",
    "check_window_sum_inequality",
]

# _alpha[k] is the n = k value; prefix[k] = sum of _alpha[0..k]
_alpha: list[Fraction] = [Fraction(0)]
_prefix: list[Fraction] = [Fraction(0)]


def _extend_alpha(n: int) -> None:
    while len(_alpha) <= n:
        k = len(_alpha)
        # sum_{j=-1..k-2} a(j) == _prefix[k-2] (a(-1) contributes 0)
        tail = _prefix[k - 2] if k >= 2 else Fraction(0)
        value = 1 + Fraction(2, k) * tail
        _alpha.append(value)
        _prefix.append(_prefix[-1] + value)


def path_expectation(n: int) -> Fraction:
    """Expected greedy MIS cardinality of the n-vertex path, exactly."""
    if n < -1:
        raise ValueError("n must be >= -1")
    if n <= 0:
        return Fraction(0)
    _extend_alpha(n)
    return _alpha[n]


def path_expectation_table(n_max: int) -> list[Fraction]:
    """Values for n = 0..n_max as a list (index -1 is not representable;
    both boundary values are 0 by convention)."""
    _extend_alpha(n_max)
    return _alpha[: n_max + 1]


def window_sum(n: int, length: int) -> Fraction:
    """Sum of path expectations over the window n+1 .. n+length."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    _extend_alpha(n + length)
    return _prefix[n + length] - _prefix[n]


def shatter_components(tree: Graph, v: int) -> list[list[int]]:
    """Components (original vertex ids) after removing v and its neighbors."""
    removed = {v} | {int(u) for u in tree.neighbors(v)}
    alive = [w for w in range(tree.n) if w not in removed]
    seen: set[int] = set()
    comps = []
    for w in alive:
        if w in seen:
            continue
        comp = [w]
        seen.add(w)
        stack = [w]
        while stack:
            a = stack.pop()
            for b in tree.neighbors(a):
                b = int(b)
                if b not in removed and b not in seen:
                    seen.add(b)
                    comp.append(b)
                    stack.append(b)
        comps.append(sorted(comp))
    return comps


def shatter_orders(tree: Graph, v: int) -> tuple[int, ...]:
    """Multiset (sorted tuple) of component orders of the shattered forest."""
    return tuple(sorted(len(c) for c in shatter_components(tree, v)))


def vertex_shatter_weight(tree: Graph, v: int) -> Fraction:
    """Sum of path expectations over the shattered component orders at v."""
    return sum((path_expectation(k) for k in shatter_orders(tree, v)), Fraction(0))


def total_shatter_weight(tree: Graph) -> Fraction:
    """Shatter weight summed over all vertices of the tree."""
    return sum((vertex_shatter_weight(tree, v) for v in range(tree.n)), Fraction(0))


_default_cache: dict[bytes, Fraction] = {}


def exact_expected_mis(
    forest: Graph,
    cap: int = 12,
    cache: dict[bytes, Fraction] | None = None,
) -> Fraction:
    """Exact expected greedy MIS cardinality of a forest.

    A forest splits by linearity: every component sees a uniform residual
    arrival order, so its expectation adds independently. On a tree the
    first arriving vertex v is occupied and removes its closed neighborhood,
    leaving the shattered forest:

        value(T) = 1 + (1/n) * sum_v value(T minus N[v])

    Memoized per component canonical code; `cache` may be supplied to
    control memo lifetime (results never depend on cache state).
    """
    if forest.n > cap:
        raise ValueError(f"forest order {forest.n} exceeds cap {cap}")
    if cache is None:
        cache = _default_cache
    comps = components(forest)
    if forest.m != forest.n - len(comps):
        raise ValueError("input contains a cycle; a forest is required")
    total = Fraction(0)
    for comp in comps:
        total += _tree_value(induced_subgraph(forest, comp), cache)
    return total


def _tree_value(tree: Graph, cache: dict[bytes, Fraction]) -> Fraction:
    if tree.n == 0:
        return Fraction(0)
    key = canonical_code(tree)
    hit = cache.get(key)
    if hit is not None:
        return hit
    acc = Fraction(0)
    for v in range(tree.n):
        for comp in shatter_components(tree, v):
            acc += _tree_value(induced_subgraph(tree, comp), cache)
    value = 1 + acc / tree.n
    cache[key] = value
    return value


def brute_force_expected_mis(g: Graph, cap: int = 8) -> Fraction:
    """Ground-truth oracle: average greedy MIS size over all n! arrival
    orders, by direct enumeration. Independent of the engine kernels and of
    the shattering recursion."""
    n = g.n
    if n > cap:
        raise ValueError(f"brute force capped at {cap} vertices")
    if n == 0:
        return Fraction(0)
    adj = g.adjacency_lists()
    total = 0
    for perm in itertools.permutations(range(n)):
        occupied = [False] * n
        blocked = [False] * n
        size = 0
        for v in perm:
            if not blocked[v]:
                occupied[v] = True
                size += 1
                for u in adj[v]:
                    blocked[u] = True
        total += size
    return Fraction(total, math.factorial(n))


@dataclass(frozen=True)
class ClaimReport:
    """Outcome of an exhaustive numeric check; a counterexample is a report
    result, not an exception."""

    ok: bool
    checked: int
    counterexample: tuple | None
    description: str


def _scaled_table(n_max: int) -> tuple[list[int], int]:
    """Path expectations as integers over one common denominator, so the
    sweep below is pure big-int arithmetic."""
    table = path_expectation_table(n_max)
    denom = 1
    for v in table:
        denom = math.lcm(denom, v.denominator)
    scaled = [int(v.numerator * (denom // v.denominator)) for v in table]
    return scaled, denom


def check_monotone_subadditive(n_max: int) -> ClaimReport:
    """Exhaustively verify, in exact arithmetic, that the path expectation
    is nondecreasing and subadditive for all indices with m + n <= n_max."""
    scaled, _ = _scaled_table(n_max)
    checked = 0
    for n in range(1, n_max):
        checked += 1
        if scaled[n + 1] < scaled[n]:
            return ClaimReport(False, checked, ("monotone", n),
                               "path expectation monotonicity")
    for s in range(2, n_max + 1):
        for m in range(1, s // 2 + 1):
            checked += 1
            if scaled[m] + scaled[s - m] < scaled[s]:
                return ClaimReport(False, checked, ("subadditive", m, s - m),
                                   "path expectation subadditivity")
    return ClaimReport(True, checked, None,
                       f"monotone + subadditive up to m+n={n_max}")


def check_window_sum_inequality(a_max: int, b_max: int, l_max: int) -> ClaimReport:
    """Exhaustively verify w(a,l) + w(b,l) <= w(a+b,l) + w(0,l) for window
    sums w over 1 <= a <= a_max, 1 <= b <= b_max, 1 <= l <= l_max."""
    scaled, _ = _scaled_table(a_max + b_max + l_max)
    prefix = [0]
    for v in scaled:
        prefix.append(prefix[-1] + v)
    # window(n, l) = sum of scaled[n+1 .. n+l] = prefix[n+l+1] - prefix[n+1]

    def window(n: int, length: int) -> int:
        return prefix[n + length + 1] - prefix[n + 1]

    checked = 0
    for length in range(1, l_max + 1):
        base = window(0, length)
        for a in range(1, a_max + 1):
            wa = window(a, length)
            for b in range(1, b_max + 1):
                checked += 1
                if wa + window(b, length) > window(a + b, length) + base:
                    return ClaimReport(False, checked, (a, b, length),
                                       "window-sum superadditivity")
    return ClaimReport(True, checked, None,
                       f"window-sum inequality up to a={a_max}, b={b_max}, l={l_max}")
