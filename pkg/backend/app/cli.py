# -*- coding: utf-8 -*-
"""
Command-line interface.

    python -m app table1 [--alpha A ...] [--refine]
    python -m app eig --alpha A [--tol TOL] [--max-refined N]
    python -m app ml --delta D --theta T --z Z
    python -m app fss --equation {fe1,fe2,fe3} --alpha A [--lambda L] [--interval a:b] --grid start:end:count

Every subcommand accepts --format {csv,json,table}, --precision N,
--config PATH, --quiet and --jobs N. Documents go to stdout and log records
to stderr. Exit status is 0 on success, 1 when a computation fails and 2 for
usage or domain errors.
"""

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from typing import List, Optional, Sequence

import numpy as np

from app.config import Settings, load_settings, setup_logging
from app.dependencies import set_settings_instance
from app.exceptions import DomainError
from app.schemas.output import TABLE1_ALPHAS, OutputFormat
from app.schemas.series import FractionalOrder
from app.schemas.solutions import Interval
from app.services.decomposition import DecompositionService
from app.services.report import ReportService
from app.services.solutions import FSS_COLUMNS, SolutionsService
from app.services.spectrum import SpectrumService

logger = logging.getLogger(__name__)

ML_COLUMNS = ("delta", "theta", "z", "value", "branch")


def parse_interval(text: str) -> Interval:
    """Parses ``a:b``."""
    try:
        a, b = (float(part) for part in text.split(":"))
    except ValueError as e:
        raise DomainError(f"Interval must look like a:b (got '{text}').") from e
    return Interval(a=a, b=b)


def parse_grid(text: str) -> np.ndarray:
    """Parses ``start:end:count`` into an evenly spaced grid, count >= 2."""
    try:
        start, end, count = text.split(":")
        start, end, count = float(start), float(end), int(count)
    except ValueError as e:
        raise DomainError(f"Grid must look like start:end:count (got '{text}').") from e
    if count < 2:
        raise DomainError(f"Grid needs at least 2 points (got {count}).")
    return np.linspace(start, end, count)


def _table1_report(alpha: float, settings: Settings, refine: bool):
    # module level so that worker processes can unpickle it
    return SpectrumService.spectrum_report(alpha, with_refinement=refine, settings=settings)


def run_table1(args, settings: Settings) -> str:
    alphas = [FractionalOrder.of(a).require_spectrum().alpha for a in args.alpha]
    if settings.jobs > 1 and len(alphas) > 1:
        logger.info(f"Computing {len(alphas)} rows on {settings.jobs} processes.")
        with ProcessPoolExecutor(max_workers=settings.jobs) as pool:
            reports = list(pool.map(_table1_report, alphas, repeat(settings), repeat(args.refine)))
    else:
        reports = [_table1_report(alpha, settings, args.refine) for alpha in alphas]
    for report in reports:
        logger.info(f"alpha={report.alpha}: {report.eigen_count} eigenvalues, oracle agrees: {report.oracle_agrees}.")
    return ReportService.render_table1(reports, args.format or OutputFormat.TABLE, settings.precision)


def run_eig(args, settings: Settings) -> str:
    alpha = FractionalOrder.of(args.alpha).require_spectrum().alpha
    report = SpectrumService.spectrum_report(
        alpha, tol=args.tol, with_refinement=True, settings=settings, max_refined=args.max_refined,
    )
    return ReportService.render_report(report, args.format or OutputFormat.TABLE, settings.precision)


def run_ml(args, settings: Settings) -> str:
    params = settings.ml_params(args.delta, args.theta)
    value, branch = DecompositionService.evaluate_ml(params, args.z, settings)
    row = {"delta": args.delta, "theta": args.theta, "z": args.z, "value": value, "branch": branch}
    return ReportService.render([row], ML_COLUMNS, args.format or OutputFormat.TABLE, settings.precision)


def run_fss(args, settings: Settings) -> str:
    interval = parse_interval(args.interval)
    grid = parse_grid(args.grid)
    rows = SolutionsService.sample_fss(args.equation, args.alpha, interval, grid, lam=args.lam, settings=settings)
    return ReportService.render(rows, FSS_COLUMNS[args.equation], args.format or OutputFormat.CSV, settings.precision)


def build_parser() -> argparse.ArgumentParser:
    """
    Builds the argument parser with its four subcommands.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[fmt.value for fmt in OutputFormat], default=None,
                        help="output format (default: table; csv for fss)")
    common.add_argument("--precision", type=int, default=None, help="significant digits of printed reals")
    common.add_argument("--config", default=None, help="key=value settings file (default: $FSLP_CONFIG)")
    common.add_argument("--quiet", action="store_true", help="only log warnings and errors")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for multi-alpha runs")

    parser = argparse.ArgumentParser(
        prog="python -m app",
        description="Real spectrum and fundamental solutions of fractional Sturm-Liouville problems.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    table1 = commands.add_parser("table1", parents=[common], help="eigenvalue counts and extreme intervals")
    table1.add_argument("--alpha", type=float, nargs="+", default=list(TABLE1_ALPHAS))
    table1.add_argument("--refine", action="store_true", help="also locate every eigenvalue")
    table1.set_defaults(handler=run_table1)

    eig = commands.add_parser("eig", parents=[common], help="full spectrum report for one order")
    eig.add_argument("--alpha", type=float, required=True)
    eig.add_argument("--tol", type=float, default=None, help="refinement tolerance (default: REFINE_TOL)")
    eig.add_argument("--max-refined", type=int, default=None, help="refine only the first N brackets")
    eig.set_defaults(handler=run_eig)

    ml = commands.add_parser("ml", parents=[common], help="evaluate E_{delta,theta}(z)")
    ml.add_argument("--delta", type=float, required=True)
    ml.add_argument("--theta", type=float, required=True)
    ml.add_argument("--z", type=float, required=True)
    ml.set_defaults(handler=run_ml)

    fss = commands.add_parser("fss", parents=[common], help="sample a fundamental solution set")
    fss.add_argument("--equation", choices=sorted(FSS_COLUMNS), required=True)
    fss.add_argument("--alpha", type=float, required=True)
    fss.add_argument("--lambda", dest="lam", type=float, default=None)
    fss.add_argument("--interval", default="0:1", help="a:b (default 0:1)")
    fss.add_argument("--grid", required=True, help="start:end:count")
    fss.set_defaults(handler=run_fss)
    return parser


def _diagnostic(error: Exception) -> str:
    lines = str(error).strip().splitlines()
    return lines[0] if lines else type(error).__name__


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs the command line and returns the exit status.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    try:
        setup_logging(args.quiet)
        settings = load_settings(args.config, overrides={"precision": args.precision, "jobs": args.jobs})
        set_settings_instance(settings)
        output = args.handler(args, settings)
    except ValueError as e:
        print(f"error: {_diagnostic(e)}", file=sys.stderr)
        return 2
    except (ArithmeticError, RuntimeError) as e:
        logger.debug("Computation failed.", exc_info=True)
        print(f"error: {_diagnostic(e)}", file=sys.stderr)
        return 1

    sys.stdout.write(output)
    return 0


def run(argv: Optional[List[str]] = None) -> None:
    sys.exit(main(argv))
