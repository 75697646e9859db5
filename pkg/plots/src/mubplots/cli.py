"""Command line for figure rendering.

``mubplots render --spec spec.json`` drives a single figure from a JSON
spec; ``mubplots fig2 .. fig6`` are shortcuts wired to the standard CSV
layouts (fig2/fig5: one sweep CSV; fig3/fig4: two slice CSVs; fig6: one
or two batch CSVs rendered as scatter panels).
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .figures import (
    SCATTER_KIND,
    SWEEP_KIND,
    PlotError,
    load_spec,
    render,
    render_panels,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


_FIG_KINDS = {
    "fig2": (SWEEP_KIND, 1, 1),
    "fig3": (SWEEP_KIND, 1, 2),
    "fig4": (SWEEP_KIND, 1, 2),
    "fig5": (SWEEP_KIND, 1, 1),
    "fig6": (SCATTER_KIND, 1, 2),
}


def build_parser() -> _Parser:
    parser = _Parser(prog="mubplots", description="Render bound-comparison figures from CSV files.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="render a figure described by a JSON spec")
    p.add_argument("--spec", required=True)
    p.set_defaults(command="render")

    for name, (kind, lo, hi) in _FIG_KINDS.items():
        p = sub.add_parser(name, help=f"{kind} figure from {lo}-{hi} CSV file(s)")
        p.add_argument("csv", nargs="+", help="input CSV file(s), one panel each")
        p.add_argument("--out", required=True, help="output image path")
        p.add_argument("--x-label", action="append", default=None)
        p.set_defaults(command=name)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "render":
            out = render(load_spec(args.spec))
        else:
            kind, lo, hi = _FIG_KINDS[args.command]
            if not lo <= len(args.csv) <= hi:
                raise _UsageError(f"{args.command} takes {lo} to {hi} CSV files, got {len(args.csv)}")
            out = render_panels(args.csv, kind, args.out, x_labels=args.x_label)
        print(out)
        return 0
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (PlotError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())
