"""Command line front end.

Subcommands:

  parse      split a target string against a reference and print the words
  estimate   run a configured experiment, writing estimates/summary CSVs
  pressure   tabulate q_n(alpha)/n over an alpha grid into pressure.csv
  smb        sample the -ln P / n series into smb.csv
  sample     draw a path from a model file and print it as text
  diagnose   print the negativity and decay diagnostics for a config

Errors exit nonzero with a single machine-parsable stderr line of the
form "error:<Kind>: <detail>".
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .core import alphabet, seq_from_text, seq_to_text
from .errors import ConfigError, ZmlabError
from .harness import (config_from_file, run_experiment, run_pressure,
                      run_smb)
from .infotheory import nd_diagnostic, se_diagnostic
from .parser import EstimatorKind, estimate, parse_mzm, parse_zm
from .sources import RngSpec, model_from_dict, sample


def _read_stream(value: str) -> str:
    """A string argument is a file path when such a file exists."""
    p = Path(value)
    if p.is_file():
        return p.read_text().split()[0]
    return value


def _cmd_parse(args) -> int:
    x_text = _read_stream(args.x)
    y_text = _read_stream(args.y)
    chars = args.alphabet or "".join(sorted(set(x_text) | set(y_text)))
    alph = alphabet(chars)
    x = seq_from_text(x_text, alph)
    y = seq_from_text(y_text, alph)
    n = args.N
    if args.kind == "zm":
        result = parse_zm(y, x, n)
        value = estimate(EstimatorKind.ZM, y, x, n)
    else:
        result = parse_mzm(y, x, n)
        value = estimate(EstimatorKind.MZM, y, x, n)
    print("|".join(result.words(y)))
    print(f"{value.value:.6f}")
    return 0


def _cmd_estimate(args) -> int:
    config = config_from_file(args.config)
    result = run_experiment(config)
    print(f"wrote {result.paths['estimates']}")
    print(f"wrote {result.paths['summary']}")
    return 0


def _cmd_pressure(args) -> int:
    config = config_from_file(args.config)
    try:
        ns = [int(part) for part in str(args.n).split(",")]
    except ValueError:
        raise ConfigError("--n", "expects an integer or comma list") from None
    alphas = np.linspace(args.alpha_min, args.alpha_max, args.steps)
    path = run_pressure(config, ns, alphas)
    print(f"wrote {path}")
    return 0


def _cmd_smb(args) -> int:
    config = config_from_file(args.config)
    path = run_smb(config)
    print(f"wrote {path}")
    return 0


def _cmd_sample(args) -> int:
    with open(args.model) as fh:
        model = model_from_dict(json.load(fh), where=str(args.model))
    rng = RngSpec(args.seed).stream(0, "x")
    print(seq_to_text(sample(model, args.n, rng)))
    return 0


def _cmd_diagnose(args) -> int:
    config = config_from_file(args.config)
    nd = nd_diagnostic(config.source_p, config.source_q,
                       config.diag_n_grid, config.diag_eta)
    series = ", ".join(f"{n}:{v:.4f}"
                       for n, v in zip(nd.n_grid, nd.values))
    print(f"ND: {nd.verdict.value.upper()}  q_n(-1)/n = [{series}]")
    se = se_diagnostic(config.source_p, config.diag_n_grid)
    print(f"SE: beta={se.beta:.3f} gamma_minus={se.gamma_minus:.6f} "
          f"worst_residual={se.worst_residual:.3e}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="zmlab",
        description="Cross-entropy estimation between symbol streams")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a target against a reference")
    p.add_argument("--kind", choices=["zm", "mzm"], required=True)
    p.add_argument("--x", required=True, help="reference string or file")
    p.add_argument("--y", required=True, help="target string or file")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--alphabet", default=None,
                   help="symbol characters, e.g. 01 (default: inferred)")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("estimate", help="run a configured experiment")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("pressure", help="tabulate pressure curves")
    p.add_argument("--config", required=True)
    p.add_argument("--n", required=True,
                   help="depth, or comma-separated depths")
    p.add_argument("--alpha-min", type=float, required=True)
    p.add_argument("--alpha-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=_cmd_pressure)

    p = sub.add_parser("smb", help="sample the -ln P / n series")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_smb)

    p = sub.add_parser("sample", help="draw a path from a model file")
    p.add_argument("--model", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("diagnose", help="support and decay diagnostics")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_diagnose)
    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ZmlabError as e:
        print(f"error:{type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error:FileNotFound: {e}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as e:
        print(f"error:BadJson: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
