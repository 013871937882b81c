"""Command-line interface: one subcommand per capability, reproducible seeds,
CSV or JSON output, and a manifest sidecar for every file written.

Exit codes: 0 success, 1 usage error, 2 a verification run found violations.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .branching import closed_form_table, preset, solve
from .estimators import (
    DECAY_CSV_HEADER,
    ESTIMATE_CSV_HEADER,
    covariance_by_distance,
    estimate_csv_row,
    mc_ratio,
    rounds_stats,
)
from .exact import exact_expected_mis, path_expectation
from .generators import GeneratorSpec
from .graphs import canonical_code, read_edge_list
from .kc import verify_kc_weights, verify_path_minimum
from .pgfsolve import (
    PgfSpec,
    branch_vacancy,
    ratio_iid_degree,
    ratio_single_type,
    vacancy,
)
from .branching import CoeffsPgf, DeterministicPgf, PoissonPgf

USAGE_ERROR = 1
VERIFICATION_FAILURE = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


@dataclass
class RunManifest:
    subcommand: str
    parameters: dict
    seed: int | None
    version: str
    timestamp: str
    outputs: list[str]

    def write_next_to(self, output_path: str) -> None:
        with open(output_path + ".manifest.json", "w", encoding="ascii") as fh:
            json.dump(asdict(self), fh, indent=2, sort_keys=True)
            fh.write("\n")


def _manifest(args, outputs: list[str]) -> RunManifest:
    params = {k: v for k, v in vars(args).items() if k != "func" and v is not None}
    return RunManifest(
        subcommand=args.subcommand,
        parameters=params,
        seed=getattr(args, "seed", None),
        version=__version__,
        timestamp=datetime.datetime.now(datetime.timezone.utc).isoformat(),
        outputs=outputs,
    )


def _emit(args, text: str) -> None:
    """Write data to --out (with manifest) or stdout."""
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _manifest(args, [out]).write_next_to(out)
        print(f"wrote {out}")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _graph_spec(args) -> GeneratorSpec:
    return GeneratorSpec(
        family=args.graph,
        n=args.n,
        lam=getattr(args, "lam", None),
        d=getattr(args, "d", None),
        depth=getattr(args, "depth", None),
    )


def _add_graph_flags(p: _Parser) -> None:
    p.add_argument("--graph", required=True, help="graph family")
    p.add_argument("--n", type=int, required=True, help="vertex count")
    p.add_argument("--lambda", dest="lam", type=float, help="mean degree (gnp)")
    p.add_argument("--d", type=int, help="degree / arity")
    p.add_argument("--depth", type=int, help="truncation depth (d_ary_truncated)")


def _threads_default() -> int:
    env = os.environ.get("GREEDY_MIS_THREADS")
    return int(env) if env else 1


def _cmd_simulate(args) -> int:
    spec = _graph_spec(args)
    est = mc_ratio(spec, trials=args.trials, seed=args.seed, threads=args.threads)
    if args.format == "json":
        payload = dict(asdict_estimate(est), family=spec.family, n=spec.n,
                       param=spec.param_label())
        _emit(args, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        _emit(args, ESTIMATE_CSV_HEADER + "\n" + estimate_csv_row(spec, est) + "\n")
    print(f"ratio mean {est.mean:.6f} +- {est.stderr:.2e} "
          f"({est.trials} trials, seed {est.seed})", file=sys.stderr)
    return 0


def asdict_estimate(est) -> dict:
    d = asdict(est)
    if d.get("max_value") is None:
        d.pop("max_value", None)
    return d


def _cmd_exact(args) -> int:
    if (args.alpha is None) == (args.tree is None):
        print("exact: give exactly one of --alpha N or --tree FILE", file=sys.stderr)
        return USAGE_ERROR
    if args.alpha is not None:
        value = path_expectation(args.alpha)
        label = f"path expectation, n={args.alpha}"
    else:
        g = read_edge_list(args.tree)
        value = exact_expected_mis(g, cap=args.cap)
        label = f"expected MIS cardinality of {args.tree}"
    print(f"{label}: {value} = {float(value):.12f}")
    return 0


def _cmd_ode(args) -> int:
    spec = preset(args.preset, lam=args.lam, d=args.d)
    sol = solve(spec, step=args.step)
    if args.dump_curve:
        header = "x," + ",".join(f"y_{t}" for t in spec.types) + ",occupancy"
        occ = sol.occupancy()
        lines = [header]
        for i, x in enumerate(sol.grid):
            ys = ",".join(repr(float(v)) for v in sol.trajectories[i])
            lines.append(f"{float(x)!r},{ys},{float(occ[i])!r}")
        args.out = args.dump_curve
        _emit(args, "\n".join(lines) + "\n")
    print(f"{spec.name}: ratio = {sol.ratio:.10f} (step {sol.step:g})")
    return 0


def _parse_coeffs(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(","))


def _cmd_pgf(args) -> int:
    if args.family == "poisson":
        if args.lam is None:
            print("pgf: poisson requires --lambda", file=sys.stderr)
            return USAGE_ERROR
        pgf = PoissonPgf(args.lam)
    elif args.family == "deterministic":
        if args.d is None:
            print("pgf: deterministic requires --d", file=sys.stderr)
            return USAGE_ERROR
        pgf = DeterministicPgf(args.d)
    else:
        if not args.coeffs:
            print("pgf: coeffs requires --coeffs", file=sys.stderr)
            return USAGE_ERROR
        pgf = CoeffsPgf(_parse_coeffs(args.coeffs))
    spec = PgfSpec(pgf=pgf, iid_degree=args.iid)
    if args.iid:
        h = branch_vacancy(spec, args.x)
        y = 0.5 * (1.0 - h * h)
        ratio = ratio_iid_degree(spec)
    else:
        h = vacancy(spec, args.x)
        y = 1.0 - h
        ratio = ratio_single_type(spec)
    print(f"h({args.x:g}) = {h:.10f}   y({args.x:g}) = {y:.10f}   ratio = {ratio:.10f}")
    return 0


def _cmd_constants(args) -> int:
    rows = closed_form_table()
    if args.format == "json":
        _emit(args, json.dumps(rows, indent=2, sort_keys=True) + "\n")
    else:
        lines = ["name,formula,value"]
        lines += [f"{r['name']},{r['formula']},{r['value']!r}" for r in rows]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_correlation(args) -> int:
    spec = _graph_spec(args)
    table = covariance_by_distance(
        spec,
        trials=args.trials,
        pair_samples=args.pairs,
        seed=args.seed,
        max_distance=args.max_distance,
        threads=args.threads,
    )
    lines = [DECAY_CSV_HEADER]
    lines += [f"{r.dist},{r.pairs},{r.cov!r}" for r in table.rows]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_rounds(args) -> int:
    spec = _graph_spec(args)
    est = rounds_stats(spec, trials=args.trials, seed=args.seed, threads=args.threads)
    if args.format == "json":
        _emit(args, json.dumps(asdict(est), indent=2, sort_keys=True) + "\n")
    else:
        _emit(args, ESTIMATE_CSV_HEADER + "\n" + estimate_csv_row(spec, est) + "\n")
    print(f"rounds mean {est.mean:.3f}, max {est.max_value:g}", file=sys.stderr)
    return 0


def _cmd_kc(args) -> int:
    report = verify_kc_weights(args.n_max)
    if args.report:
        lines = ["kind,n,x,y,edges"]
        for v in report.violations:
            kind, *rest = v
            lines.append(f"{kind}," + ",".join(str(r) for r in rest))
        args.out = args.report
        _emit(args, "\n".join(lines) + "\n")
    status = "ok" if report.ok else f"{len(report.violations)} violations"
    print(f"kc verify: {report.checked} transformations on trees up to "
          f"order {args.n_max}: {status}")
    return 0 if report.ok else VERIFICATION_FAILURE


def _cmd_trees_verify(args) -> int:
    report = verify_path_minimum(args.n)
    table = report.detail["table"]
    if args.report:
        lines = ["rank,n,value,exact,is_path,code"]
        path_code = canonical_code_of_path(args.n)
        for rank, (value, code) in enumerate(table):
            lines.append(
                f"{rank},{args.n},{float(value)!r},{value},{int(code == path_code)},"
                f"{code.decode('ascii')}"
            )
        args.out = args.report
        _emit(args, "\n".join(lines) + "\n")
    if report.ok:
        unique = "unique minimum" if report.detail["minimum_unique"] else "tied minimum"
        print(f"trees-verify: path minimal among {report.checked} trees of "
              f"order {args.n} ({unique})")
        return 0
    print(f"trees-verify: FAILED: {report.violations}")
    return VERIFICATION_FAILURE


def canonical_code_of_path(n: int) -> bytes:
    from .generators import path_graph

    return canonical_code(path_graph(n))


def build_parser() -> _Parser:
    parser = _Parser(prog="greedymis",
                     description="Random greedy maximal independent set toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("simulate", help="Monte-Carlo greedy independence ratio")
    _add_graph_flags(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threads", type=int, default=_threads_default())
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write data here (with manifest)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("exact", help="exact expected MIS values (rational)")
    p.add_argument("--alpha", type=int, help="path expectation for this order")
    p.add_argument("--tree", help="edge-list file of a tree/forest")
    p.add_argument("--cap", type=int, default=12, help="order cap for --tree")
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("ode", help="solve the branching-process ODE system")
    p.add_argument("--preset", required=True,
                   help="infinite_ray_star | poisson_gw | size_biased_gw | d_ary | d_regular")
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--d", type=int)
    p.add_argument("--step", type=float, default=1e-4)
    p.add_argument("--dump-curve", help="write the trajectory CSV here")
    p.set_defaults(func=_cmd_ode, out=None)

    p = sub.add_parser("pgf", help="generating-function shortcut for the ratio")
    p.add_argument("--family", choices=("poisson", "deterministic", "coeffs"),
                   required=True)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--d", type=int)
    p.add_argument("--coeffs", help="comma-separated probabilities")
    p.add_argument("--iid", action="store_true", help="iid-degree tree variant")
    p.add_argument("--x", type=float, default=1.0)
    p.set_defaults(func=_cmd_pgf)

    p = sub.add_parser("constants", help="closed-form limit constants table")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("correlation", help="occupancy covariance vs distance")
    _add_graph_flags(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--pairs", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-distance", type=int, default=None)
    p.add_argument("--threads", type=int, default=_threads_default())
    p.add_argument("--out")
    p.set_defaults(func=_cmd_correlation)

    p = sub.add_parser("rounds", help="parallel round-count statistics")
    _add_graph_flags(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=_threads_default())
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_rounds)

    p = sub.add_parser("kc", help="KC-transformation verification")
    kc_sub = p.add_subparsers(dest="kc_command", required=True)
    pv = kc_sub.add_parser("verify", help="exhaustive small-order check")
    pv.add_argument("--n-max", type=int, default=9)
    pv.add_argument("--report", help="write the violation CSV here")
    pv.set_defaults(func=_cmd_kc, out=None)

    p = sub.add_parser("trees-verify", help="path minimality over all free trees")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--report", help="write the sorted value table CSV here")
    p.set_defaults(func=_cmd_trees_verify, out=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    np.seterr(all="raise", under="ignore")
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"greedymis {args.subcommand}: error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
