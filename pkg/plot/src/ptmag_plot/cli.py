"""Command-line entry point.

    ptmag-plot <figure-spec.json> --out DIR

Exit codes: 0 success, 1 spec or data error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .csvdata import SpecError
from .figspec import load_figure_spec
from .render import render_figure


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ptmag-plot",
        description="render a figure-spec JSON over scenario CSVs")
    parser.add_argument("spec", help="path to a figure-spec JSON")
    parser.add_argument("--out", required=True,
                        help="output directory for the image")
    args = parser.parse_args(argv)
    try:
        spec = load_figure_spec(Path(args.spec))
        out_path = render_figure(spec, Path(args.out))
    except SpecError as exc:
        print(f"figure error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
