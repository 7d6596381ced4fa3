"""Command-line interface.

Subcommands:
    simulate <scenario>             run one scenario, write tables and charts
    sweep <scenario> --alphas ...   exhaustion curves across equity weights
    estimate-returns <panel.csv>    return moments from a macrohistory panel
    yield <curve.csv>               print the bond return series as CSV

Exit codes: 0 success, 1 configuration error, 2 data-file error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .calibration import METHODS, load_panel, panel_moments
from .engine import DEFAULT_ALPHA_GRID
from .errors import ConfigurationError, DataFileError
from .report import run_scenario, run_sweep
from .scenario import load_scenario
from .yieldcurve import load_spot_curve, safe_return_series

__all__ = ["main", "entrypoint"]


class _Parser(argparse.ArgumentParser):
    """Report usage problems as configuration errors (exit 1, not 2)."""

    def error(self, message: str) -> None:
        raise ConfigurationError(message)


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None,
                        help="override the scenario's random seed")
    parser.add_argument("--paths", type=int, default=None,
                        help="override the scenario's path count")
    parser.add_argument("--out", type=Path, default=None, metavar="DIR",
                        help="override the output directory")
    parser.add_argument("--workers", type=int, default=1,
                        help="worker processes for path simulation (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="pensim",
        description="Monte Carlo ruin and surplus analysis for a closed "
                    "defined-benefit pension fund.",
    )
    parser.add_argument("--version", action="version", version=f"pensim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one scenario file")
    p_sim.add_argument("scenario", type=Path, help="scenario INI file")
    _common_flags(p_sim)
    p_sim.set_defaults(handler=_cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="run a scenario across equity weights")
    p_sweep.add_argument("scenario", type=Path, help="scenario INI file")
    p_sweep.add_argument(
        "--alphas",
        default=",".join(str(a) for a in DEFAULT_ALPHA_GRID),
        help="comma-separated equity weights (default 0.25..0.75 step 0.10)",
    )
    _common_flags(p_sweep)
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_est = sub.add_parser(
        "estimate-returns", help="equity return moments from a country-year panel"
    )
    p_est.add_argument("panel", type=Path, help="panel CSV")
    p_est.add_argument("--method", choices=METHODS, required=True)
    p_est.add_argument(
        "--columns",
        default=None,
        help="remap canonical columns, e.g. population=pop,rgdppc=gdp_pc",
    )
    _common_flags(p_est)
    p_est.set_defaults(handler=_cmd_estimate)

    p_yield = sub.add_parser(
        "yield", help="print the bond return series implied by a spot curve"
    )
    p_yield.add_argument("curve", type=Path, help="spot curve CSV")
    p_yield.add_argument("--delta", type=float, default=0.5,
                         help="RPI adjustment in percentage points (default 0.5)")
    p_yield.add_argument("--horizon", type=int, default=None,
                         help="periods to print (default: the curve's last maturity)")
    p_yield.add_argument("--layout", choices=("long", "wide"), default="long")
    p_yield.add_argument("--row-label", default=None,
                         help="wide layout: first-column value selecting the row")
    _common_flags(p_yield)
    p_yield.set_defaults(handler=_cmd_yield)
    return parser


def _cmd_simulate(args: argparse.Namespace) -> int:
    scenario = load_scenario(
        args.scenario, seed=args.seed, n_paths=args.paths, output_dir=args.out
    )
    paths = run_scenario(scenario, workers=args.workers)
    summary = json.loads(paths["summary.json"].read_text(encoding="utf-8"))
    results = summary["results"]
    print(f"scenario: {scenario.name}")
    print(f"paths: {results['n_paths']}  seed: {results['seed']}")
    print(
        "overall exhaustion probability: "
        f"{results['overall_exhaustion_probability']:.4f}"
    )
    for threshold, p in results["surplus_exceedance"].items():
        print(f"P(terminal assets >= {threshold} bn) = {p:.4f}")
    print(f"outputs in {scenario.output_dir}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    scenario = load_scenario(
        args.scenario, seed=args.seed, n_paths=args.paths, output_dir=args.out
    )
    try:
        alphas = tuple(float(a) for a in args.alphas.split(",") if a.strip())
    except ValueError:
        raise ConfigurationError(f"--alphas: expected comma-separated numbers, got {args.alphas!r}")
    if not alphas:
        raise ConfigurationError("--alphas: empty list")
    for alpha in alphas:
        if not 0.0 <= alpha <= 1.0:
            raise ConfigurationError(f"--alphas: {alpha} outside [0, 1]")
    paths = run_sweep(scenario, alphas, workers=args.workers)
    print(f"scenario: {scenario.name}")
    print(f"alphas: {', '.join(f'{a:g}' for a in alphas)}")
    print(f"outputs in {scenario.output_dir}")
    for name in paths.values():
        print(name)
    return 0


def _parse_column_map(text: str | None) -> dict[str, str] | None:
    if text is None:
        return None
    mapping = {}
    for item in text.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise ConfigurationError(
                f"--columns: expected canonical=actual pairs, got {item!r}"
            )
        canonical, actual = item.split("=", 1)
        mapping[canonical.strip()] = actual.strip()
    return mapping or None


def _cmd_estimate(args: argparse.Namespace) -> int:
    panel = load_panel(str(args.panel), columns=_parse_column_map(args.columns))
    estimate = panel_moments(panel, args.method)
    print(
        f"method: {estimate.method}\n"
        f"years: {estimate.first_year}-{estimate.last_year}"
        f"  observations: {estimate.n_years}\n"
        f"mean: {estimate.mean:.4g}%  sd: {estimate.sd:.4g}%"
    )
    out_dir = args.out if args.out is not None else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    out_path = out_dir / "moments.json"
    out_path.write_text(
        json.dumps(
            {
                "method": estimate.method,
                "mean_pct": estimate.mean,
                "sd_pct": estimate.sd,
                "observations": estimate.n_years,
                "first_year": estimate.first_year,
                "last_year": estimate.last_year,
                "panel": str(args.panel),
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
    print(f"written: {out_path}")
    return 0


def _cmd_yield(args: argparse.Namespace) -> int:
    curve = load_spot_curve(
        str(args.curve), layout=args.layout, row_label=args.row_label
    )
    if args.horizon is not None:
        horizon = args.horizon
    else:
        horizon = int(curve.maturities[-1])
    if horizon < 1:
        raise ConfigurationError("--horizon: must be >= 1")
    series = safe_return_series(curve, args.delta, horizon)
    print("period,discount_factor,gross_return")
    print(f"0,{series.discount_factors[0]:.6g},")
    for t in range(1, horizon + 1):
        print(
            f"{t},{series.discount_factors[t]:.6g},{series.gross_returns[t - 1]:.6g}"
        )
    return 0


def main(argv: list[str] | None = None) -> int:
    """Parse arguments, dispatch, and map errors to exit codes."""
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.handler(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except DataFileError as exc:
        print(f"data file error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"data file error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()


if __name__ == "__main__":
    entrypoint()
