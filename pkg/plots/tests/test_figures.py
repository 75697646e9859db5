import json
import math

import matplotlib.pyplot as plt
import pytest

from mubplots import (
    DEFAULT_SCATTER_SERIES,
    DEFAULT_SWEEP_SERIES,
    FigureSpec,
    PlotError,
    build_figure,
    load_spec,
    read_table,
    render,
    render_panels,
)
from mubplots.cli import main
from mubplots.figures import paint_axes


def write_sweep_csv(path, points=20):
    rows = ["param,lhs,zhang_lower,thm1_lower,thm2_upper,delta_cmub,delta_zhang,purity_a"]
    for i in range(points):
        t = 2 * math.pi * i / (points - 1)
        lhs = 1.0 + math.sin(t) ** 2
        rows.append(f"{t},{lhs},{lhs - 0.5},{lhs - 0.25},{lhs + 0.5},0.1,-0.1,0.8")
    path.write_text("\n".join(rows) + "\n")
    return path


def write_scatter_csv(path, points=30):
    rows = ["index,lhs,zhang_lower,thm1_lower,thm2_upper"]
    for i in range(points):
        lhs = 0.5 + 2.5 * i / (points - 1)
        rows.append(f"{i},{lhs},{lhs - 0.4},{lhs - 0.2},{lhs + 0.3}")
    path.write_text("\n".join(rows) + "\n")
    return path


class TestReadTable:
    def test_columns(self, tmp_path):
        table = read_table(write_sweep_csv(tmp_path / "s.csv"))
        assert set(table) == {"param", "lhs", "zhang_lower", "thm1_lower",
                              "thm2_upper", "delta_cmub", "delta_zhang", "purity_a"}
        assert len(table["lhs"]) == 20

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(PlotError, match="empty"):
            read_table(path)

    def test_header_only_rejected(self, tmp_path):
        path = tmp_path / "header.csv"
        path.write_text("param,lhs\n")
        with pytest.raises(PlotError, match="no data rows"):
            read_table(path)


class TestFigureSpec:
    def test_default_series_by_kind(self):
        sweep = FigureSpec(csv_path="a.csv", kind="sweep-lines", out_path="a.png")
        assert sweep.series == DEFAULT_SWEEP_SERIES
        scatter = FigureSpec(csv_path="a.csv", kind="scatter", out_path="a.png")
        assert scatter.series == DEFAULT_SCATTER_SERIES

    def test_bad_kind_rejected(self):
        with pytest.raises(PlotError, match="kind"):
            FigureSpec(csv_path="a.csv", kind="pie", out_path="a.png")

    def test_load_spec_round_trip(self, tmp_path):
        payload = {"csv": "in.csv", "kind": "scatter", "out": "out.png",
                   "x_label": "uncertainty", "series": {"upper": "thm2_upper"}}
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps(payload))
        spec = load_spec(spec_path)
        assert spec.kind == "scatter"
        assert spec.series == {"upper": "thm2_upper"}

    def test_load_spec_missing_field(self, tmp_path):
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps({"csv": "in.csv", "kind": "scatter"}))
        with pytest.raises(PlotError, match="out"):
            load_spec(spec_path)


class TestPaintAxes:
    def test_sweep_has_one_line_per_series(self, tmp_path):
        table = read_table(write_sweep_csv(tmp_path / "s.csv"))
        fig, ax = plt.subplots()
        paint_axes(ax, table, "sweep-lines", DEFAULT_SWEEP_SERIES, "theta", "bits")
        assert len(ax.lines) == 4
        assert len(ax.collections) == 0
        plt.close(fig)

    def test_scatter_has_three_collections_and_diagonal(self, tmp_path):
        table = read_table(write_scatter_csv(tmp_path / "r.csv"))
        fig, ax = plt.subplots()
        paint_axes(ax, table, "scatter", DEFAULT_SCATTER_SERIES, "uncertainty", "bounds")
        assert len(ax.collections) == 3
        assert len(ax.lines) == 1
        plt.close(fig)

    def test_lower_points_below_diagonal_upper_above(self, tmp_path):
        table = read_table(write_scatter_csv(tmp_path / "r.csv"))
        fig, ax = plt.subplots()
        paint_axes(ax, table, "scatter", DEFAULT_SCATTER_SERIES, "", "")
        by_label = {coll.get_label(): coll.get_offsets() for coll in ax.collections}
        for label in ("lower bound (overlap)", "lower bound (purity)"):
            assert all(y <= x + 1e-9 for x, y in by_label[label])
        assert all(y >= x - 1e-9 for x, y in by_label["upper bound"])
        plt.close(fig)

    def test_missing_column_named(self, tmp_path):
        table = read_table(write_sweep_csv(tmp_path / "s.csv"))
        fig, ax = plt.subplots()
        with pytest.raises(PlotError, match="bogus"):
            paint_axes(ax, table, "sweep-lines", {"series": "bogus"}, "", "")
        plt.close(fig)


class TestRender:
    def test_writes_image(self, tmp_path):
        csv = write_sweep_csv(tmp_path / "s.csv")
        out = tmp_path / "fig.png"
        spec = FigureSpec(csv_path=str(csv), kind="sweep-lines", out_path=str(out))
        assert render(spec) == str(out)
        assert out.stat().st_size > 0

    def test_re_render_overwrites(self, tmp_path):
        csv = write_sweep_csv(tmp_path / "s.csv")
        out = tmp_path / "fig.png"
        spec = FigureSpec(csv_path=str(csv), kind="sweep-lines", out_path=str(out))
        render(spec)
        first = out.stat().st_size
        render(spec)
        assert out.stat().st_size == first

    def test_no_file_written_on_empty_body(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("param,lhs\n")
        out = tmp_path / "fig.png"
        spec = FigureSpec(csv_path=str(path), kind="sweep-lines", out_path=str(out))
        with pytest.raises(PlotError):
            render(spec)
        assert not out.exists()

    def test_missing_column_error_from_build(self, tmp_path):
        path = tmp_path / "thin.csv"
        path.write_text("param,lhs\n0,1\n1,2\n")
        spec = FigureSpec(csv_path=str(path), kind="sweep-lines", out_path=str(tmp_path / "f.png"))
        with pytest.raises(PlotError, match="zhang_lower"):
            build_figure(spec)

    def test_two_panel_render(self, tmp_path):
        a = write_sweep_csv(tmp_path / "a.csv")
        b = write_sweep_csv(tmp_path / "b.csv")
        out = tmp_path / "two.png"
        render_panels([str(a), str(b)], "sweep-lines", str(out), x_labels=["theta", "phi"])
        assert out.stat().st_size > 0


class TestCli:
    def test_fig2(self, tmp_path, capsys):
        csv = write_sweep_csv(tmp_path / "s.csv")
        out = tmp_path / "fig2.png"
        assert main(["fig2", str(csv), "--out", str(out)]) == 0
        assert out.exists()
        assert str(out) in capsys.readouterr().out

    def test_fig6_scatter(self, tmp_path):
        a = write_scatter_csv(tmp_path / "a.csv")
        b = write_scatter_csv(tmp_path / "b.csv")
        out = tmp_path / "fig6.png"
        assert main(["fig6", str(a), str(b), "--out", str(out)]) == 0
        assert out.exists()

    def test_render_from_spec(self, tmp_path):
        csv = write_scatter_csv(tmp_path / "r.csv")
        out = tmp_path / "fig.png"
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps({"csv": str(csv), "kind": "scatter", "out": str(out)}))
        assert main(["render", "--spec", str(spec_path)]) == 0
        assert out.exists()

    def test_too_many_csvs_is_usage_error(self, tmp_path):
        csv = write_sweep_csv(tmp_path / "s.csv")
        code = main(["fig2", str(csv), str(csv), "--out", str(tmp_path / "x.png")])
        assert code == 1

    def test_missing_input_is_error(self, tmp_path):
        code = main(["fig2", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "x.png")])
        assert code == 2
