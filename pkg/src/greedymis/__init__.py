"""greedymis: the random greedy maximal independent set process, end to end.

Simulation on finite graph families, exact rational expectations on trees,
the limiting branching-process ODE system with its generating-function
shortcut, and exhaustive small-order verification of path minimality under
KC-transformations.
"""

__version__ = "0.1.0"

from .branching import (
    BranchingSpec,
    CoeffsPgf,
    DeterministicPgf,
    OdeSolution,
    PoissonPgf,
    closed_form,
    closed_form_table,
    limit_ratio,
    occupancy_at,
    preset,
    rhs,
    solve,
)
from .estimators import (
    DecayTable,
    Estimate,
    covariance_by_distance,
    decreasing_path_tail,
    mc_ratio,
    rounds_stats,
    variance_curve,
)
from .exact import (
    brute_force_expected_mis,
    check_monotone_subadditive,
    check_window_sum_inequality,
    exact_expected_mis,
    path_expectation,
    path_expectation_table,
    shatter_orders,
    total_shatter_weight,
    vertex_shatter_weight,
    window_sum,
)
from .generators import (
    GeneratorSpec,
    all_free_trees,
    generate,
    prufer_decode,
    prufer_encode,
)
from .graphs import (
    Graph,
    RootedTree,
    canonical_code,
    distance,
    read_edge_list,
    sample_labelling,
    write_edge_list,
)
from .greedy import (
    GreedyResult,
    count_paths_from,
    longest_decreasing_path_from,
    past_set,
    run_greedy,
    run_parallel,
)
from .kc import (
    BarePath,
    KcPartition,
    find_bare_paths,
    is_proper,
    kc_partition,
    kc_transform,
    leaf_count,
    verify_kc_weights,
    verify_path_minimum,
)
from .pgfsolve import (
    PgfSpec,
    branch_vacancy,
    ratio_iid_degree,
    ratio_single_type,
    vacancy,
)
