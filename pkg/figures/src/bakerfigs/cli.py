"""Command line for the figure scripts.

    figures <kind> --in <paths...> --out <png> [--core <json>]

Kinds: weyl_loglog, spectrum_scatter, shape_collapse, walsh_circles (the
latter additionally needs --core pointing at the exported core-eigenvalue
JSON).  Exit codes: 0 success, 2 missing or invalid input.
"""

from __future__ import annotations

import argparse
import sys

from .render import (
    FigureInputError,
    render_shape_collapse,
    render_spectrum_scatter,
    render_walsh_circles,
    render_weyl_loglog,
)

KINDS = ["weyl_loglog", "spectrum_scatter", "shape_collapse", "walsh_circles"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figures", description="Render figures from bakerlab exports."
    )
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                        metavar="PATH", help="input CSV/JSON files")
    parser.add_argument("--core", help="core-eigenvalue JSON (walsh_circles)")
    parser.add_argument("--out", required=True, help="output PNG path")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.kind == "weyl_loglog":
            out = render_weyl_loglog(args.inputs, args.out)
        elif args.kind == "spectrum_scatter":
            out = render_spectrum_scatter(args.inputs, args.out)
        elif args.kind == "shape_collapse":
            out = render_shape_collapse(args.inputs, args.out)
        else:
            if not args.core:
                raise FigureInputError("walsh_circles needs --core <json>")
            out, _ = render_walsh_circles(args.inputs, args.core, args.out)
    except FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
