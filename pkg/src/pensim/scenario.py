"""Scenario files: the on-disk definition of one simulation run.

A scenario is an INI file (configparser dialect) with the sections
documented in the README. Input file paths resolve relative to the
scenario file itself so scenario bundles can be moved around; the
output directory resolves against the working directory at run time.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, replace
from pathlib import Path

from .cashflows import load_cashflows
from .engine import (
    DEFAULT_N_PATHS,
    DEFAULT_PERCENTILES,
    DEFAULT_THRESHOLDS,
    SimulationConfig,
)
from .errors import ConfigurationError, DataFileError
from .returns import EquityReturnParams, MeanReversion
from .yieldcurve import load_spot_curve, safe_return_series

__all__ = ["Scenario", "load_scenario", "build_config"]

# rows 2-7 of the headline configurations use the 0.5pp RPI-to-CPI
# adjustment, so it is the default; pass 0 to switch it off
DEFAULT_RPI_ADJUSTMENT_PCT = 0.5


@dataclass(frozen=True)
class Scenario:
    """Parsed and validated scenario file.

    Mirrors every SimulationConfig scalar plus the input file locations,
    reporting lists, and output directory.
    """

    name: str
    initial_assets: float
    equity_weight: float
    mean_log_return: float
    volatility: float
    ma_lags: int
    ma_coefficient: float
    curve_file: Path
    curve_layout: str
    curve_row_label: str | None
    rpi_adjustment_pct: float
    cashflow_file: Path
    components: tuple[str, ...]
    n_paths: int
    seed: int
    percentiles: tuple[float, ...]
    thresholds: tuple[float, ...]
    output_dir: Path
    source_path: Path


class _Fields:
    """Typed accessors over a ConfigParser with section.key error naming."""

    def __init__(self, parser: configparser.ConfigParser, path: str):
        self._parser = parser
        self._path = path

    def raw(self, section: str, key: str, default=None, required: bool = False):
        if self._parser.has_section(section) and self._parser.has_option(section, key):
            return self._parser.get(section, key).strip()
        if required:
            raise ConfigurationError(f"{self._path}: missing required field {section}.{key}")
        return default

    def _typed(self, section, key, cast, kind, default, required):
        value = self.raw(section, key, default=None, required=required)
        if value is None:
            return default
        try:
            return cast(value)
        except ValueError:
            raise ConfigurationError(
                f"{self._path}: {section}.{key}: expected {kind}, got {value!r}"
            ) from None

    def float(self, section, key, default=None, required=False):
        return self._typed(section, key, float, "a number", default, required)

    def int(self, section, key, default=None, required=False):
        return self._typed(section, key, int, "an integer", default, required)

    def float_list(self, section, key, default=None):
        value = self.raw(section, key)
        if value is None:
            return default
        try:
            items = tuple(float(v) for v in value.split(",") if v.strip())
        except ValueError:
            raise ConfigurationError(
                f"{self._path}: {section}.{key}: expected comma-separated numbers"
            ) from None
        if not items:
            raise ConfigurationError(f"{self._path}: {section}.{key}: empty list")
        return items


def _check(condition: bool, path: str, field: str, message: str) -> None:
    if not condition:
        raise ConfigurationError(f"{path}: {field}: {message}")


def load_scenario(
    path: str | Path,
    *,
    seed: int | None = None,
    n_paths: int | None = None,
    output_dir: str | Path | None = None,
) -> Scenario:
    """Parse, validate, and normalize a scenario file.

    Args:
        path: INI scenario file.
        seed: Optional override for simulation.seed.
        n_paths: Optional override for simulation.paths.
        output_dir: Optional override for output.directory.

    Returns:
        Validated Scenario with resolved paths.

    Raises:
        ConfigurationError: Malformed INI, missing or out-of-range fields;
            the message names the first failing field.
        DataFileError: A referenced input file does not exist.
    """
    source = Path(path)
    if not source.is_file():
        raise DataFileError(f"scenario file not found: {source}")
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(source, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (configparser.Error, UnicodeDecodeError) as exc:
        raise ConfigurationError(f"{source}: {exc}") from exc

    spath = str(source)
    fields = _Fields(parser, spath)
    name = fields.raw("scenario", "name", default=source.stem)

    initial_assets = fields.float("fund", "initial_assets_gbp_bn", required=True)
    equity_weight = fields.float("fund", "equity_weight", required=True)
    _check(initial_assets >= 0, spath, "fund.initial_assets_gbp_bn", "must be >= 0")
    _check(0 <= equity_weight <= 1, spath, "fund.equity_weight", "must lie in [0, 1]")

    mean_log_return = fields.float("equity", "mean_log_return", required=True)
    volatility = fields.float("equity", "volatility", required=True)
    ma_lags = fields.int("equity", "ma_lags", default=0)
    ma_coefficient = fields.float("equity", "ma_coefficient", default=0.0)
    _check(volatility >= 0, spath, "equity.volatility", "must be >= 0")
    _check(ma_lags >= 0, spath, "equity.ma_lags", "must be >= 0")

    curve_value = fields.raw("bonds", "curve_file", required=True)
    curve_layout = fields.raw("bonds", "curve_layout", default="long")
    curve_row_label = fields.raw("bonds", "curve_row_label", default=None)
    rpi_adjustment = fields.float(
        "bonds", "rpi_adjustment_pct", default=DEFAULT_RPI_ADJUSTMENT_PCT
    )
    _check(curve_layout in ("long", "wide"), spath, "bonds.curve_layout",
           "must be 'long' or 'wide'")

    cashflow_value = fields.raw("cashflows", "file", required=True)
    components_value = fields.raw("cashflows", "components", required=True)
    components = tuple(c.strip() for c in components_value.split(",") if c.strip())
    _check(bool(components), spath, "cashflows.components", "names at least one column")

    paths_n = fields.int("simulation", "paths", default=DEFAULT_N_PATHS)
    seed_value = fields.int("simulation", "seed", default=0)
    percentiles = fields.float_list("output", "percentiles", default=DEFAULT_PERCENTILES)
    thresholds = fields.float_list(
        "output", "surplus_thresholds_gbp_bn", default=DEFAULT_THRESHOLDS
    )
    out_value = fields.raw("output", "directory", default=None)

    if n_paths is not None:
        paths_n = n_paths
    if seed is not None:
        seed_value = seed
    _check(paths_n >= 1, spath, "simulation.paths", "must be >= 1")
    _check(0 <= seed_value < 2**64, spath, "simulation.seed",
           "must be an integer in [0, 2**64)")
    for p in percentiles:
        _check(0 < p < 100, spath, "output.percentiles",
               "levels must lie strictly between 0 and 100")
    _check(all(b > a for a, b in zip(percentiles, percentiles[1:])),
           spath, "output.percentiles", "levels must be ascending")

    base = source.parent
    curve_file = (base / curve_value).resolve()
    cashflow_file = (base / cashflow_value).resolve()
    for field_name, file_path in (
        ("bonds.curve_file", curve_file),
        ("cashflows.file", cashflow_file),
    ):
        if not file_path.is_file():
            raise DataFileError(f"{spath}: {field_name}: no such file: {file_path}")

    if output_dir is not None:
        out_path = Path(output_dir)
    elif out_value is not None:
        out_path = Path(out_value)
    else:
        out_path = Path("out") / name

    return Scenario(
        name=name,
        initial_assets=initial_assets,
        equity_weight=equity_weight,
        mean_log_return=mean_log_return,
        volatility=volatility,
        ma_lags=ma_lags,
        ma_coefficient=ma_coefficient,
        curve_file=curve_file,
        curve_layout=curve_layout,
        curve_row_label=curve_row_label,
        rpi_adjustment_pct=rpi_adjustment,
        cashflow_file=cashflow_file,
        components=components,
        n_paths=paths_n,
        seed=seed_value,
        percentiles=percentiles,
        thresholds=thresholds,
        output_dir=out_path,
        source_path=source,
    )


def build_config(scenario: Scenario) -> SimulationConfig:
    """Load the scenario's input files and assemble the engine config.

    Raises:
        DataFileError: Input files fail to parse or validate.
        ConfigurationError: Assembled values violate engine invariants.
    """
    schedule = load_cashflows(str(scenario.cashflow_file), scenario.components)
    curve = load_spot_curve(
        str(scenario.curve_file),
        layout=scenario.curve_layout,
        row_label=scenario.curve_row_label,
    )
    safe = safe_return_series(
        curve, scenario.rpi_adjustment_pct, schedule.horizon
    )
    try:
        equity = EquityReturnParams(
            mean_log_return=scenario.mean_log_return,
            volatility=scenario.volatility,
            mean_reversion=(
                MeanReversion(scenario.ma_lags, scenario.ma_coefficient)
                if scenario.ma_lags > 0
                else None
            ),
        )
        return SimulationConfig(
            initial_assets=scenario.initial_assets,
            alpha=scenario.equity_weight,
            equity=equity,
            safe=safe,
            schedule=schedule,
            n_paths=scenario.n_paths,
            seed=scenario.seed,
        )
    except ValueError as exc:
        raise ConfigurationError(f"{scenario.source_path}: {exc}") from exc


def with_alpha(scenario: Scenario, alpha: float) -> Scenario:
    """Copy of the scenario at a different equity weight."""
    return replace(scenario, equity_weight=alpha)
