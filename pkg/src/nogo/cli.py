"""Command-line entry point: ``nogo {hardy,ancilla,sweep,custom}``."""
from __future__ import annotations

import argparse
import logging
import math
import sys

from .config import ConfigError
from .feasibility import FEAS_TOL
from .report import emit
from .scenarios import run_ancilla, run_custom, run_hardy, run_singlet_sweep
from .simplex import SolverFailure


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", default=None, help="output file (default: standard output)")
    p.add_argument("--tol", type=float, default=FEAS_TOL, help="feasibility tolerance")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing (output no longer byte-stable)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nogo",
        description="Joint-distribution checks for Born-rule tables on four intersecting hypersurfaces.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("hardy", help="Hardy-Jordan state with Hadamard evolutions"))
    _common(sub.add_parser("ancilla", help="Hardy-Jordan state with correlated pointer ancillas"))
    sw = sub.add_parser("sweep", help="singlet with opposite rotations over a grid of angles")
    sw.add_argument("--phi-min", type=float, default=0.0)
    sw.add_argument("--phi-max", type=float, default=math.pi / 2)
    sw.add_argument("--steps", type=int, default=181)
    _common(sw)
    cu = sub.add_parser("custom", help="scenario from a YAML config file")
    cu.add_argument("--config", required=True)
    _common(cu)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        if args.command == "hardy":
            report = run_hardy(args.tol, args.timing)
        elif args.command == "ancilla":
            report = run_ancilla(args.tol, args.timing)
        elif args.command == "sweep":
            try:
                report = run_singlet_sweep(args.phi_min, args.phi_max, args.steps, args.tol, args.timing)
            except ValueError as exc:
                print(f"nogo: {exc}", file=sys.stderr)
                return 2
        else:
            report = run_custom(args.config, args.tol, args.timing)
        emit(report, args.format, args.out)
    except ConfigError as exc:
        print(exc.located(), file=sys.stderr)
        return 2
    except (SolverFailure, OSError, ArithmeticError) as exc:
        print(f"nogo: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
