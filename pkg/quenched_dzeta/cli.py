"""
Command-line front end.

    quenched-dzeta free-energy --config run.toml
    quenched-dzeta moments --config run.toml --k-max 12 --format csv
    quenched-dzeta phi --config run.toml --s 0.5 1+1j 2
    quenched-dzeta sweep-a --config run.toml --a 0.5 1 2
    quenched-dzeta validate --config run.toml

Exit codes: 0 success, 1 configuration or domain error, 2 numerical
non-convergence or a failed check.
"""

import argparse
import logging
import sys
from typing import Any, Optional, Sequence

from quenched_dzeta.config import RunConfig, load_run_config, resolved_config
from quenched_dzeta.core import QuenchedFreeEnergy
from quenched_dzeta.exceptions import ConfigError, ConvergenceError, DomainError
from quenched_dzeta.reporting import as_row, render, write_report

logger = logging.getLogger("quenched_dzeta")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2

DEFAULT_MOMENT_ORDERS = 12
DEFAULT_SWEEP = (0.5, 1.0, 2.0)
DEFAULT_PHI_POINTS = ("0", "0.5", "1+1j", "2")


class _Parser(argparse.ArgumentParser):
    """Usage errors are configuration errors: exit 1, not argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _complex_arg(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: '{text}'") from None


def _emit(run: RunConfig, command: str, rows: list[dict[str, Any]], summary: dict[str, Any]) -> None:
    text = render(command, rows, resolved_config(run), run.output.format, summary)
    write_report(text, run.output.path)


def cmd_free_energy(engine: QuenchedFreeEnergy, run: RunConfig, args) -> int:
    report = engine.free_energy(with_oracle=not args.no_oracle)
    summary = {"converged": report.converged, "stats": engine.metrics.get_summary()}
    _emit(run, "free-energy", [as_row(report)], summary)
    return EXIT_OK if report.converged else EXIT_NUMERICAL


def cmd_moments(engine: QuenchedFreeEnergy, run: RunConfig, args) -> int:
    table = engine.moments(args.k_max)
    growth = engine.moment_growth(args.k_max, table)
    if growth.error is None:
        rows = [as_row(row) for row in growth.rows]
    else:
        rows = [
            {"k": k, "log_moment": table.log_moment(k), "error_estimate": table.error(k)}
            for k in range(1, table.k_max + 1)
        ]
    summary = {
        "alpha": growth.alpha,
        "beta": growth.beta,
        "beta_literal": growth.beta_literal,
        "c_lambda": growth.c_lambda,
        "bound_passed": growth.passed,
        "bound_error": growth.error,
    }
    _emit(run, "moments", rows, summary)
    return EXIT_OK


def cmd_phi(engine: QuenchedFreeEnergy, run: RunConfig, args) -> int:
    points = args.s or [_complex_arg(p) for p in DEFAULT_PHI_POINTS]
    values = [engine.phi(s, a=args.a) for s in points]
    summary = {"within_bound": all(v.within_bound for v in values if v.s_real >= 0)}
    _emit(run, "phi", [as_row(v) for v in values], summary)
    return EXIT_OK


def cmd_sweep_a(engine: QuenchedFreeEnergy, run: RunConfig, args) -> int:
    sweep = engine.sweep_a(args.a or list(DEFAULT_SWEEP), with_oracle=not args.no_oracle)
    columns = (
        "a", "total", "series_partial", "k_used", "correction", "remainder_value",
        "remainder_bound", "tail_bound", "converged", "cancellation_warning",
        "oracle_value", "discrepancy",
    )
    rows = [{key: as_row(r)[key] for key in columns} for r in sweep.reports]
    summary = {"spread": sweep.spread, "converged": sweep.converged}
    _emit(run, "sweep-a", rows, summary)
    return EXIT_OK if sweep.converged else EXIT_NUMERICAL


def cmd_validate(engine: QuenchedFreeEnergy, run: RunConfig, args) -> int:
    report = engine.validate()
    summary = {
        "passed": report.passed,
        "failed": [c.name for c in report.checks if not c.passed],
    }
    _emit(run, "validate", [as_row(c) for c in report.checks], summary)
    return EXIT_OK if report.passed else EXIT_NUMERICAL


COMMANDS = {
    "free-energy": cmd_free_energy,
    "moments": cmd_moments,
    "phi": cmd_phi,
    "sweep-a": cmd_sweep_a,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", "-c", help="TOML run config with dotted keys")
    common.add_argument(
        "--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
        help="Override a config key, e.g. --set series.a=0.5 (repeatable)",
    )
    common.add_argument("--output", "-o", help="Output file path (default: stdout)")
    common.add_argument("--format", "-f", choices=["csv", "json"], help="Output format")
    common.add_argument("--verbose", "-v", action="count", default=0, help="-v for info, -vv for debug logging")
    common.add_argument("--quiet", "-q", action="store_true", help="Only log errors")

    parser = _Parser(
        prog="quenched-dzeta",
        description="Quenched free energy of the disordered zero-dimensional phi^4 model",
    )
    subparsers = parser.add_subparsers(dest="command", parser_class=_Parser)

    # --- free-energy ---
    fe_parser = subparsers.add_parser("free-energy", parents=[common], help="E[ln Z] from the moment series")
    fe_parser.add_argument("--a", type=float, help="Split point a > 0 (overrides series.a)")
    fe_parser.add_argument("--k-max", type=int, help="Largest series order (overrides series.k_max)")
    fe_parser.add_argument("--no-oracle", action="store_true", help="Skip the direct quadrature cross-check")

    # --- moments ---
    mom_parser = subparsers.add_parser("moments", parents=[common], help="ln E[Z^k] with the growth bound")
    mom_parser.add_argument("--k-max", type=int, default=DEFAULT_MOMENT_ORDERS, help="Largest moment order")

    # --- phi ---
    phi_parser = subparsers.add_parser("phi", parents=[common], help="Phi(s) = E[Z^-s] and its bound")
    phi_parser.add_argument("--s", type=_complex_arg, nargs="+", help="Points s, e.g. 0.5 1+1j 2")
    phi_parser.add_argument("--a", type=float, help="Split point for Phi1/Phi2 (default: series.a)")

    # --- sweep-a ---
    sweep_parser = subparsers.add_parser("sweep-a", parents=[common], help="Totals over several split points")
    sweep_parser.add_argument("--a", type=float, nargs="+", help="Split points (default: 0.5 1 2)")
    sweep_parser.add_argument("--k-max", type=int, help="Largest series order (overrides series.k_max)")
    sweep_parser.add_argument("--no-oracle", action="store_true", help="Skip the direct quadrature cross-check")

    # --- validate ---
    subparsers.add_parser("validate", parents=[common], help="Run the invariant suite")

    return parser


def _configure_logging(args) -> None:
    if args.quiet:
        level = logging.ERROR
    elif args.verbose >= 2:
        level = logging.DEBUG
    elif args.verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _flag_values(args) -> dict[str, Any]:
    values: dict[str, Any] = {}
    if args.output is not None:
        values["output.path"] = args.output
    if args.format is not None:
        values["output.format"] = args.format
    if args.command == "free-energy" and args.a is not None:
        values["series.a"] = args.a
    if args.command in ("free-energy", "sweep-a") and args.k_max is not None:
        values["series.k_max"] = args.k_max
    return values


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_OK
    _configure_logging(args)

    try:
        run = load_run_config(args.config, args.overrides, _flag_values(args))
        engine = QuenchedFreeEnergy.from_config(run)
    except (ConfigError, DomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        return COMMANDS[args.command](engine, run, args)
    except ConvergenceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
