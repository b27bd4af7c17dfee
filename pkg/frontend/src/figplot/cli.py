"""Command line front end: figplot --d 3 --schmidt s.csv --yb y.csv --contours c.csv --out fig1.png

Exit codes:
  0  figure written (header-only inputs render blank axes and still succeed)
  2  bad arguments (unknown dimension, contours requested for the 3D figure)
  3  input file missing, unreadable, or with malformed data rows
  4  CSV header does not match the documented schema; the column diff is
     printed to stderr
"""

from __future__ import annotations

import argparse
import sys

from .render import PlotSpec, render
from .schema import SchemaMismatch

EXIT_OK = 0
EXIT_BAD_FILE = 3
EXIT_SCHEMA = 4


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="figplot",
        description="render invariant-region CSVs as a 2D (d=3) or 3D (d=4) scatter figure",
    )
    ap.add_argument("--d", type=int, required=True, choices=(3, 4),
                    help="qudit dimension the CSVs were produced for")
    ap.add_argument("--schmidt", metavar="CSV", help="region samples of the reference ensemble (drawn red)")
    ap.add_argument("--yb", metavar="CSV", help="region samples of the gate ensemble (drawn blue)")
    ap.add_argument("--contours", metavar="CSV", help="d=3 boundary curves to overlay")
    ap.add_argument("--out", required=True, metavar="PNG", help="output image path")
    ap.add_argument("--point-size", type=float, default=2.0)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.d == 4 and args.contours is not None:
        ap.error("--contours overlays are 2D curves and only apply to --d 3")
    spec = PlotSpec(
        d=args.d,
        out_path=args.out,
        schmidt_path=args.schmidt,
        yb_path=args.yb,
        contours_path=args.contours,
        point_size=args.point_size,
    )
    try:
        render(spec)
    except SchemaMismatch as exc:
        print(f"figplot: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (OSError, ValueError) as exc:
        print(f"figplot: {exc}", file=sys.stderr)
        return EXIT_BAD_FILE
    print(f"wrote {args.out}")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
