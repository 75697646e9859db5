"""Figure rendering for uncertainty-bound CSV files."""

from .figures import (
    DEFAULT_SCATTER_SERIES,
    DEFAULT_SWEEP_SERIES,
    SCATTER_KIND,
    SWEEP_KIND,
    FigureSpec,
    PlotError,
    build_figure,
    load_spec,
    read_table,
    render,
    render_panels,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SCATTER_SERIES",
    "DEFAULT_SWEEP_SERIES",
    "FigureSpec",
    "PlotError",
    "SCATTER_KIND",
    "SWEEP_KIND",
    "build_figure",
    "load_spec",
    "read_table",
    "render",
    "render_panels",
]
