"""Equity return moments from a country-year macrohistory panel.

Nominal total returns are deflated to real terms with

    real = (1 + nominal) / (1 + inflation) - 1

and summarized two ways: pooling every country-year observation, or
first collapsing each year to the GDP-weighted average across countries
(weights proportional to population times real GDP per capita,
renormalized over the countries with complete data that year) and then
taking moments of that portfolio series. Both report the arithmetic
mean and the sample (n-1) standard deviation in percent.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .errors import DataFileError

__all__ = [
    "CountryYearRecord",
    "MomentEstimate",
    "PANEL_COLUMNS",
    "METHOD_POOLED",
    "METHOD_WEIGHTED",
    "load_panel",
    "real_return",
    "gdp_weights",
    "global_weighted_return_series",
    "estimate_moments",
    "panel_moments",
]

log = logging.getLogger(__name__)

PANEL_COLUMNS = ("country", "year", "eq_tr", "inflation", "population", "rgdppc")
METHOD_POOLED = "unweighted-pooled"
METHOD_WEIGHTED = "gdp-weighted-portfolio"
METHODS = (METHOD_POOLED, METHOD_WEIGHTED)


@dataclass(frozen=True)
class CountryYearRecord:
    """One country-year of the panel.

    Attributes:
        country: Country identifier.
        year: Calendar year.
        nominal_total_return: Equity total return as a fraction (eq_tr).
        inflation: CPI inflation as a fraction.
        population: Persons.
        real_gdp_per_capita: Constant-currency units per person.
    """

    country: str
    year: int
    nominal_total_return: float | None = None
    inflation: float | None = None
    population: float | None = None
    real_gdp_per_capita: float | None = None


@dataclass(frozen=True)
class MomentEstimate:
    """Summary moments of a real-return sample.

    Attributes:
        mean: Arithmetic mean, percent per annum.
        sd: Sample standard deviation (n-1 divisor), percent per annum.
        n_years: Number of observations behind the estimate (years for
            the portfolio series, country-years for the pooled sample).
        method: One of METHOD_POOLED or METHOD_WEIGHTED.
        first_year: Earliest year contributing.
        last_year: Latest year contributing.
    """

    mean: float
    sd: float
    n_years: int
    method: str
    first_year: int
    last_year: int

    def __post_init__(self) -> None:
        if self.sd < 0:
            raise ValueError("sd must be >= 0")
        if self.n_years < 2:
            raise ValueError("moment estimates need at least 2 observations")


def load_panel(path: str, columns: dict[str, str] | None = None) -> pd.DataFrame:
    """Read a macrohistory panel CSV into canonical columns.

    Args:
        path: CSV with header country,year,eq_tr,inflation,population,rgdppc.
        columns: Optional remapping canonical name -> actual file column,
            for panels exported under different headers.

    Returns:
        DataFrame with the canonical columns. Rows violating the
        positivity invariants (1 + eq_tr > 0, 1 + inflation > 0) are
        dropped with a logged count; rows with missing fields are kept
        and skipped per-operation.

    Raises:
        DataFileError: Missing file or missing columns.
    """
    try:
        frame = pd.read_csv(path)
    except OSError as exc:
        raise DataFileError(f"cannot read panel file {path}: {exc}") from exc
    except (pd.errors.ParserError, pd.errors.EmptyDataError, ValueError) as exc:
        raise DataFileError(f"{path}: {exc}") from exc

    rename = {}
    for canonical in PANEL_COLUMNS:
        actual = (columns or {}).get(canonical, canonical)
        if actual not in frame.columns:
            raise DataFileError(f"{path}: missing column {actual!r} (for {canonical})")
        rename[actual] = canonical
    frame = frame.rename(columns=rename)[list(PANEL_COLUMNS)].copy()

    for name in PANEL_COLUMNS[1:]:
        frame[name] = pd.to_numeric(frame[name], errors="coerce")
    frame["year"] = frame["year"].astype("Int64")

    degenerate = (frame["eq_tr"] <= -1) | (frame["inflation"] <= -1)
    if degenerate.any():
        log.info("%s: dropped %d rows with returns or inflation at or below -100%%",
                 path, int(degenerate.sum()))
        frame = frame[~degenerate]
    return frame.reset_index(drop=True)


def real_return(record: CountryYearRecord) -> float:
    """Deflate one record's nominal total return to real terms.

    Raises:
        ValueError: If either field is missing or the denominator is
            non-positive.
    """
    if record.nominal_total_return is None or record.inflation is None:
        raise ValueError(
            f"{record.country} {record.year}: return or inflation missing"
        )
    if 1.0 + record.inflation <= 0 or 1.0 + record.nominal_total_return <= 0:
        raise ValueError(
            f"{record.country} {record.year}: return or inflation at or below -100%"
        )
    return (1.0 + record.nominal_total_return) / (1.0 + record.inflation) - 1.0


def _real_return_column(frame: pd.DataFrame) -> pd.Series:
    """Vectorized real_return over panel rows; NaN where inputs are missing."""
    return (1.0 + frame["eq_tr"]) / (1.0 + frame["inflation"]) - 1.0


def gdp_weights(records: pd.DataFrame) -> dict[str, float]:
    """Portfolio weights for the countries present in one year.

    Weights are proportional to population * real GDP per capita over
    the countries with complete data (return, inflation, population,
    GDP), normalized to sum 1. Scaling every country's product by a
    common constant leaves the weights unchanged.

    Args:
        records: Panel rows for a single year.

    Returns:
        Mapping country -> weight.

    Raises:
        ValueError: If no country has complete data.
    """
    complete = records.dropna(subset=["eq_tr", "inflation", "population", "rgdppc"])
    if complete.empty:
        raise ValueError("no complete records for this year")
    product = complete["population"] * complete["rgdppc"]
    total = product.sum()
    if total <= 0:
        raise ValueError("total GDP weight is non-positive")
    return {
        str(country): float(value / total)
        for country, value in zip(complete["country"], product)
    }


def global_weighted_return_series(panel: pd.DataFrame) -> pd.Series:
    """GDP-weighted average real return per year.

    Years with no complete country record are skipped with a logged
    count; years with partial coverage keep the remaining countries at
    renormalized weights.

    Args:
        panel: Canonical panel frame (see load_panel).

    Returns:
        Series indexed by year, values are portfolio real returns
        as fractions.
    """
    frame = panel.copy()
    frame["real_return"] = _real_return_column(frame)
    complete = frame.dropna(
        subset=["real_return", "population", "rgdppc"]
    )
    skipped = frame["year"].nunique() - complete["year"].nunique()
    if skipped:
        log.info("skipped %d years with no complete country record", skipped)

    def weighted(group: pd.DataFrame) -> float:
        product = group["population"] * group["rgdppc"]
        return float((group["real_return"] * product).sum() / product.sum())

    series = complete.groupby("year").apply(weighted, include_groups=False)
    series.index = series.index.astype(int)
    return series.sort_index()


def estimate_moments(returns: np.ndarray, method: str) -> MomentEstimate:
    """Arithmetic mean and sample SD of a return sample, in percent.

    Args:
        returns: Real returns as fractions; for METHOD_WEIGHTED a Series
            indexed by year, otherwise any sequence (year range is then
            unavailable and reported as 0).
        method: Which pipeline produced the sample; recorded verbatim.

    Returns:
        MomentEstimate with mean and sd multiplied up to percent.

    Raises:
        ValueError: Fewer than 2 values or unknown method.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if isinstance(returns, pd.Series):
        years = returns.index.to_numpy()
        values = returns.to_numpy(dtype=float)
    else:
        years = None
        values = np.asarray(returns, dtype=float)
    finite = np.isfinite(values)
    values = values[finite]
    if years is not None:
        years = years[finite]
    if values.size < 2:
        raise ValueError("moment estimation needs at least 2 values")
    mean = float(np.mean(values)) * 100.0
    sd = float(np.std(values, ddof=1)) * 100.0
    return MomentEstimate(
        mean=mean,
        sd=sd,
        n_years=int(values.size),
        method=method,
        first_year=int(years.min()) if years is not None else 0,
        last_year=int(years.max()) if years is not None else 0,
    )


def panel_moments(panel: pd.DataFrame, method: str) -> MomentEstimate:
    """Moments of a panel under either summary method.

    METHOD_POOLED pools every country-year real return;
    METHOD_WEIGHTED first collapses each year to the GDP-weighted
    portfolio return and summarizes that series.
    """
    if method == METHOD_POOLED:
        frame = panel.copy()
        real = _real_return_column(frame)
        keep = real.notna()
        skipped = int((~keep).sum())
        if skipped:
            log.info("skipped %d records with missing return or inflation", skipped)
        sample = pd.Series(
            real[keep].to_numpy(), index=frame.loc[keep, "year"].astype(int)
        )
        estimate = estimate_moments(sample, method)
    elif method == METHOD_WEIGHTED:
        estimate = estimate_moments(global_weighted_return_series(panel), method)
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return estimate
