"""Command line front end for the CSV renderers.

  plots convergence --estimates est.csv [--smb smb.csv] [--href 0.693]
                    --out fig.png
  plots pressure --in pressure.csv --out fig.svg

Failures print a single "error: ..." line on stderr and exit 2.
"""

from __future__ import annotations

import argparse
import sys

from .errors import PlotsError
from .render import render_convergence, render_pressure


def _cmd_convergence(args) -> int:
    report = render_convergence(args.estimates, args.out,
                                summary_csv=args.summary,
                                smb_csv=args.smb, href=args.href)
    print(f"wrote {report.out_path} ({report.curve_count} curves)")
    return 0


def _cmd_pressure(args) -> int:
    report = render_pressure(args.infile, args.out, chord=args.chord)
    print(f"wrote {report.out_path} ({len(report.depths)} depths)")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="plots", description="Render figures from harness CSV files")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convergence", help="estimator medians against N")
    p.add_argument("--estimates", required=True)
    p.add_argument("--summary", default=None,
                   help="summary CSV; supplies the reference line")
    p.add_argument("--smb", default=None)
    p.add_argument("--href", type=float, default=None,
                   help="horizontal reference value in nats")
    p.add_argument("--out", required=True, help="output image (png or svg)")
    p.set_defaults(func=_cmd_convergence)

    p = sub.add_parser("pressure", help="pressure curves against alpha")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--chord", action="store_true",
                   help="overlay the left-slope chord through the origin")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_pressure)
    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PlotsError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
