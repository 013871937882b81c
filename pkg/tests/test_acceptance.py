"""Acceptance suite: every criterion at its stated tolerance, one PASS line
printed per criterion (run with -s or look at captured output).

The Monte-Carlo block and the order-9 tree enumeration dominate the
runtime (a few minutes in total).
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import reference_parallel
from greedymis.branching import closed_form, limit_ratio, preset
from greedymis.estimators import (
    covariance_by_distance,
    decreasing_path_tail,
    mc_ratio,
    rounds_stats,
    variance_curve,
)
from greedymis.exact import (
    brute_force_expected_mis,
    check_monotone_subadditive,
    check_window_sum_inequality,
    exact_expected_mis,
    path_expectation,
)
from greedymis.generators import GeneratorSpec, all_free_trees, generate, path_graph
from greedymis.graphs import induced_subgraph, sample_labelling
from greedymis.greedy import check_greedy_result, past_set, run_greedy, run_parallel
from greedymis.kc import verify_kc_weights, verify_path_minimum
from greedymis.pgfsolve import PgfSpec, ratio_iid_degree, ratio_single_type
from greedymis.branching import DeterministicPgf, PoissonPgf

ZETA2 = (1 - math.exp(-2)) / 2

ODE_CASES = (
    [("infinite_ray_star", dict(d=d)) for d in range(1, 7)]
    + [("poisson_gw", dict(lam=lam)) for lam in (0.5, 1.0, 2.0, 5.0)]
    + [("size_biased_gw", dict(lam=1.0))]
    + [("d_ary", dict(d=d)) for d in range(2, 7)]
    + [("d_regular", dict(d=d)) for d in range(3, 7)]
)


def report(name: str, detail: str = ""):
    print(f"PASS: {name}" + (f" ({detail})" if detail else ""))


def test_constants_regression_ode():
    """Every preset/closed-form pair agrees within 1e-6 at step 1e-4."""
    t0 = time.time()
    worst = 0.0
    for name, kwargs in ODE_CASES:
        got = limit_ratio(preset(name, **kwargs), step=1e-4)
        want = closed_form(name, **kwargs)
        err = abs(got - want)
        worst = max(worst, err)
        assert err <= 1e-6, (name, kwargs, err)
    report("constants regression (ODE path)",
           f"{len(ODE_CASES)} presets, worst |err| {worst:.2e}, "
           f"{time.time() - t0:.2f}s")


def test_pgf_ode_cross_agreement():
    """pgf shortcut vs ODE solve within 1e-6 on every expressible preset."""
    single = (
        [(PgfSpec(DeterministicPgf(1)), ("infinite_ray_star", dict(d=1)))]
        + [(PgfSpec(PoissonPgf(lam)), ("poisson_gw", dict(lam=lam)))
           for lam in (0.5, 1.0, 2.0, 5.0)]
        + [(PgfSpec(DeterministicPgf(d)), ("d_ary", dict(d=d)))
           for d in range(2, 7)]
    )
    iid = (
        [(PgfSpec(DeterministicPgf(2), iid_degree=True),
          ("infinite_ray_star", dict(d=2)))]
        + [(PgfSpec(DeterministicPgf(d), iid_degree=True), ("d_regular", dict(d=d)))
           for d in range(3, 7)]
    )
    worst = 0.0
    for pgf_spec, (name, kwargs) in single:
        diff = abs(ratio_single_type(pgf_spec) - limit_ratio(preset(name, **kwargs)))
        worst = max(worst, diff)
        assert diff <= 1e-6, (name, kwargs)
    for pgf_spec, (name, kwargs) in iid:
        diff = abs(ratio_iid_degree(pgf_spec) - limit_ratio(preset(name, **kwargs)))
        worst = max(worst, diff)
        assert diff <= 1e-6, (name, kwargs)
    report("pgf/ODE cross-agreement",
           f"{len(single)} single-type + {len(iid)} iid-degree, worst {worst:.2e}")


@pytest.mark.slow
def test_monte_carlo_vs_limit():
    """Finite families at n = 1e5 against their limit constants."""
    t0 = time.time()
    cases = [
        (GeneratorSpec("path", 100_000), 200, ZETA2, 0.005),
        (GeneratorSpec("cycle", 100_000), 200, ZETA2, 0.005),
        (GeneratorSpec("gnp", 100_000, lam=1.0), 100, math.log(2.0), 0.01),
        (GeneratorSpec("gnp", 100_000, lam=2.0), 100, math.log(3.0) / 2, 0.01),
        (GeneratorSpec("gnp", 100_000, lam=5.0), 100, math.log(6.0) / 5, 0.01),
        (GeneratorSpec("uniform_tree", 100_000), 200, 0.5, 0.005),
        (GeneratorSpec("regular", 100_000, d=3), 100, 0.375, 0.005),
        (GeneratorSpec("functional_mapping", 100_000), 100, 0.5, 0.01),
        (GeneratorSpec("functional_permutation", 100_000), 100, ZETA2, 0.01),
    ]
    for spec, trials, limit, tol in cases:
        est = mc_ratio(spec, trials=trials, seed=20260810)
        assert abs(est.mean - limit) <= tol, (spec, est.mean, limit)
        print(f"  {spec.family}{'(' + spec.param_label() + ')' if spec.param_label() else ''}:"
              f" mean {est.mean:.6f} vs limit {limit:.6f} (tol {tol})")
    report("Monte-Carlo vs limit",
           f"9 families at n=1e5, {time.time() - t0:.0f}s; functional mapping "
           f"matches 0.5 and permutation matches {ZETA2:.6f}")


def test_exact_tree_oracle_equivalence():
    """Shattering recursion == permutation enumeration; paths == recursion."""
    t0 = time.time()
    count = 0
    for n in range(2, 9):
        for tree in all_free_trees(n):
            assert exact_expected_mis(tree) == brute_force_expected_mis(tree)
            count += 1
    for n in range(1, 13):
        assert exact_expected_mis(path_graph(n)) == path_expectation(n)
    assert path_expectation(3) == brute_force_expected_mis(path_graph(3)) == Fraction(5, 3)
    assert path_expectation(4) == brute_force_expected_mis(path_graph(4)) == Fraction(2)
    report("exact-tree oracle equivalence",
           f"{count} free trees (n<=8), paths to n=12, {time.time() - t0:.0f}s")


@pytest.mark.slow
def test_path_minimality_small_orders():
    """The path attains the exact minimum among all free trees, n <= 9."""
    t0 = time.time()
    for n in range(1, 10):
        rep = verify_path_minimum(n)
        assert rep.ok, rep.violations
    # cross-check the order-9 enumeration: 47 pairwise non-isomorphic trees
    nx = pytest.importorskip("networkx")
    trees = all_free_trees(9)
    assert len(trees) == 47
    nx_trees = [nx.Graph(t.edges()) for t in trees]
    for i in range(47):
        for j in range(i + 1, 47):
            assert not nx.is_isomorphic(nx_trees[i], nx_trees[j])
    report("path minimality (exact, n<=9)",
           f"47 trees at order 9, pairwise non-isomorphic, {time.time() - t0:.0f}s")


def test_kc_verification():
    """Zero violations of the shatter-weight inequalities and the grading."""
    t0 = time.time()
    rep = verify_kc_weights(9)
    assert rep.ok, rep.violations[:5]
    report("KC verification",
           f"{rep.checked} transformations, zero violations, {time.time() - t0:.0f}s")


def test_exact_inequality_sweeps():
    """Monotone + subadditive to 2000; window-sum inequality to 200^3."""
    t0 = time.time()
    rep1 = check_monotone_subadditive(2000)
    assert rep1.ok, rep1.counterexample
    rep2 = check_window_sum_inequality(200, 200, 200)
    assert rep2.ok, rep2.counterexample
    report("exact inequality sweeps",
           f"{rep1.checked} + {rep2.checked} exact comparisons, "
           f"{time.time() - t0:.0f}s")


@pytest.mark.slow
def test_process_equivalences():
    """Sequential == parallel on 1e4 instances; independence + maximality
    on every run; occupancy determined by the past on 1e3 instances."""
    t0 = time.time()
    rng = np.random.default_rng(77)
    families = ["path", "cycle", "star", "gnp", "uniform_tree",
                "functional_mapping", "functional_permutation", "regular"]
    for i in range(10_000):
        family = families[i % len(families)]
        n = int(rng.integers(2, 201))
        if family == "gnp":
            spec = GeneratorSpec(family, n, lam=float(rng.uniform(0.5, min(5.0, n))))
        elif family == "regular":
            d = int(rng.integers(1, 4))
            n = max(n, d + 1)
            n += (d * n) % 2
            spec = GeneratorSpec(family, n, d=d)
        elif family == "cycle":
            spec = GeneratorSpec(family, max(n, 3))
        else:
            spec = GeneratorSpec(family, n)
        g = generate(spec, rng)
        labels = sample_labelling(g.n, rng)
        seq = run_greedy(g, labels)
        par = run_parallel(g, labels)
        assert np.array_equal(seq.occupied, par.occupied)
        check_greedy_result(g, seq)
        if i % 10 == 0:
            v = int(rng.integers(g.n))
            past = sorted(past_set(g, labels, v))
            sub = induced_subgraph(g, past)
            assert run_greedy(sub, labels[past]).occupied[past.index(v)] == \
                seq.occupied[v]
    # spot-check the parallel round counts against the reference simulator
    for _ in range(50):
        n = int(rng.integers(2, 40))
        g = generate(GeneratorSpec("uniform_tree", n), rng)
        labels = sample_labelling(n, rng)
        _, ref_rounds = reference_parallel(g.adjacency_lists(), labels)
        assert run_parallel(g, labels).rounds == ref_rounds
    report("process equivalences",
           f"1e4 instances, past-set property on 1e3, {time.time() - t0:.0f}s")


@pytest.mark.slow
def test_concentration_and_decay_probes():
    """Qualitative finite-size checks of the variance/covariance/tail/round
    behaviour."""
    t0 = time.time()
    curve = variance_curve(GeneratorSpec("path", 10), [100, 1000, 10_000],
                           trials=200, seed=31)
    variances = [v for _, v in curve]
    assert variances[0] > variances[1] > variances[2], curve

    table = covariance_by_distance(GeneratorSpec("cycle", 1000), trials=400,
                                   pair_samples=1500, seed=32, max_distance=10)
    far = next(r for r in table.rows if r.dist == 10)
    assert abs(far.cov) < 0.01, far

    tail = decreasing_path_tail(GeneratorSpec("path", 100_000), trials=20,
                                r_max=20, seed=33)
    assert tail[20][1] < 1e-4, tail[20]

    est = rounds_stats(GeneratorSpec("path", 1_000_000), trials=5, seed=34)
    assert est.max_value <= 60, est

    report("concentration/decay probes",
           f"var {variances[0]:.1e}->{variances[2]:.1e}, far |cov| "
           f"{abs(far.cov):.1e}, tail(20) {tail[20][1]:.1e}, max rounds "
           f"{est.max_value:g}, {time.time() - t0:.0f}s")
