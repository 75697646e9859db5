"""Render line and scatter figures from uncertainty-bound CSV files.

Sweep CSVs carry a ``param`` column plus bound columns; batch CSVs carry
an ``index`` column and are plotted against the uncertainty itself.  The
series styling follows one fixed scheme: black solid uncertainty, blue
dotted overlap lower bound, red dash-dotted purity lower bound, green
dashed upper bound.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


class PlotError(ValueError):
    """Bad figure spec or CSV input."""


SWEEP_KIND = "sweep-lines"
SCATTER_KIND = "scatter"

X_COLUMN = {SWEEP_KIND: "param", SCATTER_KIND: "lhs"}

DEFAULT_SWEEP_SERIES = {
    "uncertainty": "lhs",
    "lower bound (overlap)": "zhang_lower",
    "lower bound (purity)": "thm1_lower",
    "upper bound": "thm2_upper",
}
DEFAULT_SCATTER_SERIES = {
    "lower bound (overlap)": "zhang_lower",
    "lower bound (purity)": "thm1_lower",
    "upper bound": "thm2_upper",
}

LINE_STYLE = {
    "lhs": dict(color="black", linestyle="-"),
    "zhang_lower": dict(color="tab:blue", linestyle=":"),
    "thm1_lower": dict(color="tab:red", linestyle="-."),
    "thm2_upper": dict(color="tab:green", linestyle="--"),
}
MARKER_STYLE = {
    "zhang_lower": dict(color="tab:blue", marker="o"),
    "thm1_lower": dict(color="tab:red", marker="D"),
    "thm2_upper": dict(color="tab:green", marker="s"),
}


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    kind: str
    out_path: str
    x_label: str = ""
    y_label: str = "bits"
    series: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in (SWEEP_KIND, SCATTER_KIND):
            raise PlotError(f"kind must be {SWEEP_KIND!r} or {SCATTER_KIND!r}, got {self.kind!r}")
        if not self.series:
            default = DEFAULT_SWEEP_SERIES if self.kind == SWEEP_KIND else DEFAULT_SCATTER_SERIES
            object.__setattr__(self, "series", dict(default))


def load_spec(path) -> FigureSpec:
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    for key in ("csv", "kind", "out"):
        if key not in payload:
            raise PlotError(f"spec file: missing field {key!r}")
    return FigureSpec(
        csv_path=payload["csv"],
        kind=payload["kind"],
        out_path=payload["out"],
        x_label=payload.get("x_label", ""),
        y_label=payload.get("y_label", "bits"),
        series=payload.get("series", {}),
    )


def read_table(path) -> dict[str, list[float]]:
    """CSV as column name -> float values; empty bodies are rejected."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise PlotError(f"{path}: empty file") from None
        rows = [row for row in reader if row]
    if not rows:
        raise PlotError(f"{path}: no data rows")
    return {name: [float(row[i]) for row in rows] for i, name in enumerate(header)}


def paint_axes(ax, table: Mapping[str, list[float]], kind: str,
               series: Mapping[str, str], x_label: str, y_label: str) -> None:
    x_col = X_COLUMN[kind]
    missing = [c for c in [x_col, *series.values()] if c not in table]
    if missing:
        raise PlotError(f"missing column {missing[0]!r}; CSV has {sorted(table)}")
    x = table[x_col]
    if kind == SWEEP_KIND:
        for label, column in series.items():
            ax.plot(x, table[column], label=label, **LINE_STYLE.get(column, {}))
    else:
        for label, column in series.items():
            style = MARKER_STYLE.get(column, {"marker": "."})
            ax.scatter(x, table[column], label=label, s=12,
                       facecolors="none", edgecolors=style.get("color", "gray"),
                       marker=style.get("marker", "."))
        lo = min(x)
        hi = max(x)
        ax.plot([lo, hi], [lo, hi], color="gray", linewidth=0.8, label="y = x")
    ax.set_xlabel(x_label)
    ax.set_ylabel(y_label)
    ax.legend(fontsize=8)


def build_figure(spec: FigureSpec):
    """Figure for one spec; the caller owns closing it."""
    table = read_table(spec.csv_path)
    fig, ax = plt.subplots(figsize=(5.0, 3.6), constrained_layout=True)
    try:
        paint_axes(ax, table, spec.kind, spec.series, spec.x_label, spec.y_label)
    except PlotError:
        plt.close(fig)
        raise
    return fig


def render(spec: FigureSpec) -> str:
    """Write the figure image; nothing is written when the input is invalid."""
    fig = build_figure(spec)
    try:
        Path(spec.out_path).parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(spec.out_path)
    finally:
        plt.close(fig)
    return spec.out_path


def render_panels(csv_paths, kind: str, out_path: str,
                  x_labels=None, y_label: str = "bits",
                  series: Mapping[str, str] | None = None) -> str:
    """One row of panels, one CSV per panel; used by the fig2..fig6 commands."""
    csv_paths = list(csv_paths)
    if not csv_paths:
        raise PlotError("at least one CSV is required")
    tables = [read_table(p) for p in csv_paths]
    if series is None:
        series = DEFAULT_SWEEP_SERIES if kind == SWEEP_KIND else DEFAULT_SCATTER_SERIES
    x_labels = list(x_labels or [""] * len(csv_paths))
    fig, axes = plt.subplots(1, len(csv_paths),
                             figsize=(5.0 * len(csv_paths), 3.6), constrained_layout=True)
    axes = [axes] if len(csv_paths) == 1 else list(axes)
    try:
        for ax, table, x_label in zip(axes, tables, x_labels):
            paint_axes(ax, table, kind, series, x_label, y_label)
        Path(out_path).parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out_path)
    finally:
        plt.close(fig)
    return out_path
