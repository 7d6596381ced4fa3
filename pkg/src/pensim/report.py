"""Output emission: delimited tables, summary JSON, and SVG charts.

Everything written here is deterministic for a fixed scenario and seed.
Numbers are formatted to 6 significant digits; SVG rendering pins the
hash salt and strips the date metadata so re-renders are byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.ticker import PercentFormatter

from . import __version__
from .engine import EnsembleStats, run_ensemble, sweep_allocation
from .scenario import Scenario, build_config, with_alpha

__all__ = [
    "run_scenario",
    "run_sweep",
    "write_fan_csv",
    "write_exhaustion_csv",
    "write_surplus_csv",
    "write_sweep_csv",
]

# numeric precision for every value in the delimited outputs
_PRECISION = ".6g"

_SVG_RC = {
    "svg.hashsalt": "pensim",
    "figure.figsize": (9.0, 5.5),
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _fmt(value: float) -> str:
    return format(float(value), _PRECISION)


def _write_rows(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    lines += [",".join(row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_fan_csv(path: Path, stats: EnsembleStats) -> None:
    """Year rows, one column per percentile of the asset distribution."""
    header = ["year"] + [f"p{level:g}" for level in stats.percentiles]
    rows = (
        [str(int(year))] + [_fmt(v) for v in stats.fan[:, i]]
        for i, year in enumerate(stats.fan_years)
    )
    _write_rows(path, header, rows)


def write_exhaustion_csv(path: Path, stats: EnsembleStats) -> None:
    """Year rows with the cumulative exhaustion probability."""
    rows = (
        [str(int(year)), _fmt(p)]
        for year, p in zip(stats.years, stats.exhaustion_prob_by_year)
    )
    _write_rows(path, ["year", "cumulative_exhaustion_probability"], rows)


def write_surplus_csv(path: Path, stats: EnsembleStats) -> None:
    """Threshold rows with the terminal exceedance probability."""
    rows = (
        [_fmt(threshold), _fmt(p)]
        for threshold, p in stats.surplus_exceedance.items()
    )
    _write_rows(path, ["threshold_gbp_bn", "probability"], rows)


def write_sweep_csv(path: Path, years: np.ndarray, curves: dict[float, np.ndarray]) -> None:
    """Year rows, one exhaustion-probability column per equity weight."""
    alphas = list(curves)
    header = ["year"] + [f"alpha_{a:g}" for a in alphas]
    rows = (
        [str(int(year))] + [_fmt(curves[a][i]) for a in alphas]
        for i, year in enumerate(years)
    )
    _write_rows(path, header, rows)


def _scenario_echo(scenario: Scenario) -> dict:
    """Every input parameter, sufficient to reconstruct the scenario file."""
    return {
        "name": scenario.name,
        "scenario_file": str(scenario.source_path),
        "fund": {
            "initial_assets_gbp_bn": scenario.initial_assets,
            "equity_weight": scenario.equity_weight,
        },
        "equity": {
            "mean_log_return": scenario.mean_log_return,
            "volatility": scenario.volatility,
            "ma_lags": scenario.ma_lags,
            "ma_coefficient": scenario.ma_coefficient,
        },
        "bonds": {
            "curve_file": str(scenario.curve_file),
            "curve_layout": scenario.curve_layout,
            "curve_row_label": scenario.curve_row_label,
            "rpi_adjustment_pct": scenario.rpi_adjustment_pct,
        },
        "cashflows": {
            "file": str(scenario.cashflow_file),
            "components": list(scenario.components),
        },
        "simulation": {
            "paths": scenario.n_paths,
            "seed": scenario.seed,
        },
        "output": {
            "directory": str(scenario.output_dir),
            "percentiles": list(scenario.percentiles),
            "surplus_thresholds_gbp_bn": list(scenario.thresholds),
        },
    }


def _write_summary(path: Path, scenario: Scenario, stats: EnsembleStats) -> None:
    payload = {
        "tool": {"name": "pensim", "version": __version__},
        "scenario": _scenario_echo(scenario),
        "results": {
            "start_year": stats.start_year,
            "final_year": int(stats.years[-1]),
            "horizon_years": int(stats.years.size),
            "n_paths": stats.n_paths,
            "seed": stats.seed,
            "overall_exhaustion_probability": stats.overall_exhaustion_prob,
            "surplus_exceedance": {
                _fmt(k): v for k, v in stats.surplus_exceedance.items()
            },
            "terminal_assets_percentiles_gbp_bn": {
                f"p{level:g}": float(stats.fan[i, -1])
                for i, level in enumerate(stats.percentiles)
            },
        },
    }
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _render_fan_svg(path: Path, stats: EnsembleStats, title: str) -> None:
    with matplotlib.rc_context(_SVG_RC):
        fig, ax = plt.subplots()
        levels = stats.percentiles
        years = stats.fan_years
        pair_count = len(levels) // 2
        for i in range(pair_count):
            ax.fill_between(
                years,
                stats.fan[i],
                stats.fan[len(levels) - 1 - i],
                alpha=0.18 + 0.12 * i,
                color="tab:blue",
                linewidth=0,
                label=f"p{levels[i]:g}-p{levels[len(levels) - 1 - i]:g}",
            )
        if len(levels) % 2:
            ax.plot(
                years,
                stats.fan[pair_count],
                color="tab:blue",
                label=f"p{levels[pair_count]:g}",
            )
        ax.axhline(0.0, color="black", linewidth=0.8)
        ax.set_xlabel("Year")
        ax.set_ylabel("Fund assets (GBP bn, real)")
        ax.set_title(title)
        ax.legend(loc="upper left", frameon=False)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)


def _render_sweep_svg(
    path: Path, years: np.ndarray, curves: dict[float, np.ndarray], title: str
) -> None:
    with matplotlib.rc_context(_SVG_RC):
        fig, ax = plt.subplots()
        for alpha, curve in curves.items():
            ax.plot(years, curve, label=f"{alpha:.0%} equities")
        ax.set_xlabel("Year")
        ax.set_ylabel("Cumulative exhaustion probability")
        ax.yaxis.set_major_formatter(PercentFormatter(xmax=1.0))
        ax.set_ylim(0, 1)
        ax.set_title(title)
        ax.legend(loc="upper left", frameon=False)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)


def run_scenario(scenario: Scenario, *, workers: int = 1) -> dict[str, Path]:
    """Simulate a scenario and write its full output set.

    Writes fan.csv, exhaustion.csv, surplus.csv, fan.svg, and
    summary.json into the scenario's output directory.

    Returns:
        Mapping output name -> written path.
    """
    config = build_config(scenario)
    stats = run_ensemble(
        config,
        workers=workers,
        percentiles=scenario.percentiles,
        thresholds=scenario.thresholds,
    )
    out = scenario.output_dir
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "fan.csv": out / "fan.csv",
        "exhaustion.csv": out / "exhaustion.csv",
        "surplus.csv": out / "surplus.csv",
        "fan.svg": out / "fan.svg",
        "summary.json": out / "summary.json",
    }
    write_fan_csv(paths["fan.csv"], stats)
    write_exhaustion_csv(paths["exhaustion.csv"], stats)
    write_surplus_csv(paths["surplus.csv"], stats)
    _render_fan_svg(paths["fan.svg"], stats, scenario.name)
    _write_summary(paths["summary.json"], scenario, stats)
    return paths


def run_sweep(
    scenario: Scenario, alphas: tuple[float, ...], *, workers: int = 1
) -> dict[str, Path]:
    """Run the allocation sweep and write sweep.csv and sweep.svg.

    All weights share the scenario's seed (common random numbers), so
    the written curves differ only by allocation.
    """
    base = build_config(scenario)
    curves = sweep_allocation(base, alphas, workers=workers)
    out = scenario.output_dir
    out.mkdir(parents=True, exist_ok=True)
    paths = {"sweep.csv": out / "sweep.csv", "sweep.svg": out / "sweep.svg"}
    years = base.schedule.years
    write_sweep_csv(paths["sweep.csv"], years, curves)
    _render_sweep_svg(
        paths["sweep.svg"], years, curves, f"{scenario.name}: allocation sweep"
    )
    return paths
