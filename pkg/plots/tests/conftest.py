"""Sample CSVs are produced by the primary CLI (the only interface this
package consumes) once per session."""

import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))


def cli(*argv, cwd=None):
    proc = subprocess.run(["greedymis", *argv], capture_output=True, text=True,
                          cwd=cwd)
    if proc.returncode != 0:
        raise RuntimeError(f"greedymis {argv} failed: {proc.stderr}")
    return proc.stdout


@pytest.fixture(scope="session")
def sample_dir(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("csvs")

    # convergence: one estimate row per order, concatenated
    rows = []
    for n in (1000, 4000, 16000):
        out = root / f"est_{n}.csv"
        cli("simulate", "--graph", "path", "--n", str(n), "--trials", "30",
            "--seed", "11", "--out", str(out))
        with open(out, newline="") as fh:
            header, row = fh.read().strip().splitlines()
        rows.append(row)
    with open(root / "convergence.csv", "w") as fh:
        fh.write(header + "\n" + "\n".join(rows) + "\n")

    cli("correlation", "--graph", "cycle", "--n", "400", "--trials", "120",
        "--pairs", "1500", "--seed", "3", "--max-distance", "12",
        "--out", str(root / "decay.csv"))
    cli("ode", "--preset", "poisson_gw", "--lambda", "1.0", "--step", "1e-3",
        "--dump-curve", str(root / "curve.csv"))
    cli("trees-verify", "--n", "6", "--report", str(root / "tree_table.csv"))

    constants = cli("constants")
    value = None
    for line in constants.strip().splitlines()[1:]:
        name, _, val = line.split(",")
        if name == "infinite_ray_star(d=2)":
            value = float(val)
    assert value is not None
    (root / "asymptote.txt").write_text(repr(value))
    return root


@pytest.fixture(scope="session")
def line_constant(sample_dir) -> float:
    return float((sample_dir / "asymptote.txt").read_text())
