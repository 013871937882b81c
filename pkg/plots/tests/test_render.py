import matplotlib.pyplot as plt
import pytest

from render import PlotJob, SchemaError, main, render


def job(kind, sample_dir, tmp_path, csv_name, **kwargs):
    return PlotJob(kind=kind, inputs=(str(sample_dir / csv_name),),
                   output=str(tmp_path / f"{kind}.png"), **kwargs)


class TestRenderKinds:
    def test_convergence_with_asymptote(self, sample_dir, tmp_path, line_constant):
        j = job("convergence", sample_dir, tmp_path, "convergence.csv",
                asymptote=line_constant)
        fig = render(j)
        try:
            ax = fig.axes[0]
            flat = [ln for ln in ax.lines
                    if len(set(ln.get_ydata())) == 1
                    and ln.get_ydata()[0] == line_constant]
            assert flat, "no horizontal asymptote line at the constants value"
        finally:
            plt.close(fig)
        assert (tmp_path / "convergence.png").stat().st_size > 10_000

    def test_decay(self, sample_dir, tmp_path):
        fig = render(job("decay", sample_dir, tmp_path, "decay.csv"))
        plt.close(fig)
        assert (tmp_path / "decay.png").stat().st_size > 10_000

    def test_curve(self, sample_dir, tmp_path, line_constant):
        fig = render(job("curve", sample_dir, tmp_path, "curve.csv"))
        try:
            ax = fig.axes[0]
            occupancy = next(ln for ln in ax.lines
                             if ln.get_label() == "occupancy")
            assert abs(occupancy.get_ydata()[-1] - 0.6931471805599453) < 1e-6
        finally:
            plt.close(fig)
        assert (tmp_path / "curve.png").stat().st_size > 10_000

    def test_tree_table(self, sample_dir, tmp_path):
        fig = render(job("tree-table", sample_dir, tmp_path, "tree_table.csv"))
        plt.close(fig)
        assert (tmp_path / "tree-table.png").stat().st_size > 10_000


class TestErrors:
    def test_empty_csv(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        with pytest.raises(SchemaError):
            render(PlotJob(kind="decay", inputs=(str(empty),),
                           output=str(tmp_path / "x.png")))

    def test_header_only_csv(self, tmp_path):
        f = tmp_path / "h.csv"
        f.write_text("dist,pairs,cov\n")
        with pytest.raises(SchemaError):
            render(PlotJob(kind="decay", inputs=(str(f),),
                           output=str(tmp_path / "x.png")))

    def test_schema_mismatch(self, sample_dir, tmp_path):
        with pytest.raises(SchemaError):
            render(PlotJob(kind="decay",
                           inputs=(str(sample_dir / "convergence.csv"),),
                           output=str(tmp_path / "x.png")))

    def test_unknown_kind(self, tmp_path):
        with pytest.raises(ValueError):
            PlotJob(kind="sparkline", inputs=("x.csv",), output="y.png")

    def test_cli_error_exit(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        code = main(["--kind", "decay", "--in", str(empty),
                     "--out", str(tmp_path / "x.png")])
        assert code == 1


class TestCliEntry:
    def test_main_renders(self, sample_dir, tmp_path, capsys):
        out = tmp_path / "c.png"
        code = main(["--kind", "curve", "--in", str(sample_dir / "curve.csv"),
                     "--out", str(out)])
        assert code == 0 and out.exists()

    def test_deterministic_output(self, sample_dir, tmp_path):
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        for target in (a, b):
            main(["--kind", "decay", "--in", str(sample_dir / "decay.csv"),
                  "--out", str(target)])
        assert a.read_bytes() == b.read_bytes()
