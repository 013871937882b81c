#!/usr/bin/env python3
"""Offline figure rendering for greedymis CLI outputs.

Strictly a view: reads the CSV schemas the CLI writes and never recomputes
any statistic. Four kinds:

  convergence  estimate rows (family,n,param,...,mean,...,ci_lo,ci_hi),
               one point per row, CI band, optional horizontal asymptote
  decay        correlation rows (dist,pairs,cov), |cov| against distance
  curve        ODE trajectory rows (x,y_<type>...,occupancy)
  tree-table   sorted exact-value rows (rank,n,value,exact,is_path,code)

Usage: render.py --kind <k> --in <csv> [--in <csv> ...] --out <img>
                 [--asymptote v]
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

KINDS = ("convergence", "decay", "curve", "tree-table")

EXPECTED_COLUMNS = {
    "convergence": ["family", "n", "param", "trials", "seed", "mean", "var",
                    "stderr", "ci_lo", "ci_hi"],
    "decay": ["dist", "pairs", "cov"],
    "tree-table": ["rank", "n", "value", "exact", "is_path", "code"],
}

FIGSIZE = (7.0, 4.5)


class SchemaError(ValueError):
    """Input CSV does not match the schema the plot kind expects."""


@dataclass(frozen=True)
class PlotJob:
    kind: str
    inputs: tuple[str, ...]
    output: str
    asymptote: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown plot kind {self.kind!r}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")


def _read_rows(path: str, kind: str) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if header is None:
            raise SchemaError(f"{path}: empty file")
        if kind == "curve":
            if (not header or header[0] != "x" or header[-1] != "occupancy"
                    or not all(c.startswith("y_") for c in header[1:-1])
                    or len(header) < 3):
                raise SchemaError(f"{path}: expected x,y_<type>...,occupancy, "
                                  f"got {header}")
        elif header != EXPECTED_COLUMNS[kind]:
            raise SchemaError(f"{path}: expected columns "
                              f"{EXPECTED_COLUMNS[kind]}, got {header}")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def _render_convergence(job: PlotJob, ax) -> None:
    groups: dict[str, list[dict]] = {}
    for path in job.inputs:
        for row in _read_rows(path, "convergence"):
            key = row["family"] + (f" ({row['param']})" if row["param"] else "")
            groups.setdefault(key, []).append(row)
    for key, rows in sorted(groups.items()):
        rows.sort(key=lambda r: int(r["n"]))
        n = [int(r["n"]) for r in rows]
        mean = [float(r["mean"]) for r in rows]
        lo = [float(r["ci_lo"]) for r in rows]
        hi = [float(r["ci_hi"]) for r in rows]
        ax.fill_between(n, lo, hi, alpha=0.25)
        ax.plot(n, mean, marker="o", label=key)
    if job.asymptote is not None:
        ax.axhline(job.asymptote, color="black", linestyle="--", linewidth=1,
                   label=f"limit {job.asymptote:.6f}")
    ax.set_xscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("greedy independence ratio")
    ax.set_title("ratio vs order, 95% CI")
    ax.legend()


def _render_decay(job: PlotJob, ax) -> None:
    rows = [r for path in job.inputs for r in _read_rows(path, "decay")]
    rows.sort(key=lambda r: int(r["dist"]))
    dist = [int(r["dist"]) for r in rows]
    cov = [abs(float(r["cov"])) for r in rows]
    ax.plot(dist, cov, marker="o")
    ax.set_yscale("log")
    ax.set_xlabel("distance")
    ax.set_ylabel("|cov| of occupancy indicators")
    ax.set_title("correlation decay with distance")
    if job.asymptote is not None:
        ax.axhline(job.asymptote, color="black", linestyle="--", linewidth=1)


def _render_curve(job: PlotJob, ax) -> None:
    for path in job.inputs:
        with open(path, newline="", encoding="utf-8") as fh:
            header = next(csv.reader(fh), None)
        rows = _read_rows(path, "curve")
        x = [float(r["x"]) for r in rows]
        for col in header[1:]:
            style = dict(linewidth=2) if col == "occupancy" else dict(
                linewidth=1, linestyle=":")
            ax.plot(x, [float(r[col]) for r in rows], label=col, **style)
    if job.asymptote is not None:
        ax.axhline(job.asymptote, color="black", linestyle="--", linewidth=1,
                   label=f"limit {job.asymptote:.6f}")
    ax.set_xlabel("x")
    ax.set_ylabel("occupancy probability")
    ax.set_title("branching-process occupancy trajectories")
    ax.legend()


def _render_tree_table(job: PlotJob, ax) -> None:
    rows = [r for path in job.inputs for r in _read_rows(path, "tree-table")]
    rows.sort(key=lambda r: int(r["rank"]))
    ranks = [int(r["rank"]) for r in rows]
    values = [float(r["value"]) for r in rows]
    colors = ["tab:red" if r["is_path"] == "1" else "tab:blue" for r in rows]
    ax.bar(ranks, values, color=colors)
    order = rows[0]["n"]
    ax.set_xlabel(f"rank among free trees of order {order}")
    ax.set_ylabel("exact expected greedy MIS cardinality")
    ax.set_title("tree values, path highlighted")
    lo = min(values)
    ax.set_ylim(lo * 0.9, max(values) * 1.05)
    if job.asymptote is not None:
        ax.axhline(job.asymptote, color="black", linestyle="--", linewidth=1)


_RENDERERS = {
    "convergence": _render_convergence,
    "decay": _render_decay,
    "curve": _render_curve,
    "tree-table": _render_tree_table,
}


def render(job: PlotJob):
    """Render the job and write its image; returns the figure."""
    fig, ax = plt.subplots(figsize=FIGSIZE)
    try:
        _RENDERERS[job.kind](job, ax)
        fig.savefig(job.output, dpi=120)
    except Exception:
        plt.close(fig)
        raise
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render.py", description="Render greedymis CSV outputs to figures")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        metavar="CSV", help="input CSV (repeatable)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--asymptote", type=float, default=None,
                        help="draw a horizontal reference line at this value")
    args = parser.parse_args(argv)
    try:
        job = PlotJob(kind=args.kind, inputs=tuple(args.inputs),
                      output=args.out, asymptote=args.asymptote)
        fig = render(job)
        plt.close(fig)
    except (OSError, ValueError) as exc:
        print(f"render.py: error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
