"""Deterministic gross returns for the safe (bond) asset.

A real spot-rate curve plus an additive RPI adjustment (in percentage
points, converting RPI-linked yields onto a CPI basis) is compounded
into cumulative discount factors

    DR_t = (1 + (spot_rate(t) + delta) / 100) ** t,   DR_0 = 1

and the per-period gross bond return is the ratio of consecutive
factors, DR_t / DR_(t-1). Spot rates are linearly interpolated between
quoted maturities and held flat beyond the last one.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DataFileError

__all__ = [
    "SpotCurve",
    "SafeReturnSeries",
    "discount_factors",
    "forward_gross_returns",
    "safe_return_series",
    "load_spot_curve",
]

CURVE_COLUMNS = ("maturity_years", "real_spot_rate_pct")


@dataclass(frozen=True, eq=False)
class SpotCurve:
    """Real zero-coupon spot rates by integer maturity.

    Attributes:
        maturities: Strictly increasing maturities in years from the
            valuation date.
        rates_pct: Annualized real spot rates in percent, one per maturity.
        label: Free-text provenance, e.g. the curve date.
    """

    maturities: np.ndarray
    rates_pct: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        m = np.asarray(self.maturities, dtype=float)
        r = np.asarray(self.rates_pct, dtype=float)
        if m.ndim != 1 or m.shape != r.shape:
            raise ValueError("maturities and rates must be 1-D and equal length")
        if m.size and np.any(np.diff(m) <= 0):
            raise ValueError("maturities must be strictly increasing")
        if m.size and m[0] < 0:
            raise ValueError("maturities must be >= 0")
        # a quoted zero maturity must carry the baseline zero rate
        if m.size and m[0] == 0 and r[0] != 0.0:
            raise ValueError("rate at maturity 0 is fixed at 0")
        if not np.all(np.isfinite(r)):
            raise ValueError("spot rates must be finite")
        object.__setattr__(self, "maturities", m)
        object.__setattr__(self, "rates_pct", r)

    def rate_at(self, t: np.ndarray | float) -> np.ndarray:
        """Interpolated spot rate (percent) at maturity t.

        Linear between quoted points, flat beyond the last; below the
        first quoted maturity the curve anchors to (0, 0).
        """
        m, r = self.maturities, self.rates_pct
        if m.size == 0:
            raise ConfigurationError("spot curve is empty")
        if m[0] > 0:
            m = np.concatenate([[0.0], m])
            r = np.concatenate([[0.0], r])
        return np.interp(t, m, r)


@dataclass(frozen=True, eq=False)
class SafeReturnSeries:
    """Cumulative discount factors and the per-period bond returns.

    ``discount_factors`` holds DR_0 .. DR_T (so length T+1, first entry
    exactly 1). ``gross_returns`` holds the T per-period factors in
    period order: entry k is the period k+1 return DR_(k+1) / DR_k.
    """

    discount_factors: np.ndarray
    gross_returns: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        dr = np.asarray(self.discount_factors, dtype=float)
        if dr.ndim != 1 or dr.size < 1:
            raise ValueError("discount factors must be a non-empty 1-D sequence")
        if dr[0] != 1.0:
            raise ValueError("DR_0 must equal 1")
        if np.any(dr <= 0):
            raise ValueError("discount factors must be strictly positive")
        object.__setattr__(self, "discount_factors", dr)
        object.__setattr__(self, "gross_returns", dr[1:] / dr[:-1])

    @property
    def horizon(self) -> int:
        return self.gross_returns.size


def discount_factors(curve: SpotCurve, delta: float, horizon: int) -> np.ndarray:
    """Compound the curve into cumulative factors DR_0 .. DR_horizon.

    Args:
        curve: Validated spot curve.
        delta: RPI adjustment in percentage points, added to every rate.
        horizon: Last period to cover; factors beyond the curve's final
            maturity use that rate held flat.

    Returns:
        Array of length horizon + 1 with DR_0 = 1.

    Raises:
        ConfigurationError: If the curve has no points.
        ValueError: If any resulting factor is non-positive.
    """
    if curve.maturities.size == 0:
        raise ConfigurationError("spot curve is empty")
    if not np.isfinite(delta):
        raise ConfigurationError("delta must be finite")
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    t = np.arange(horizon + 1, dtype=float)
    rates = curve.rate_at(t)
    base = 1.0 + (rates + delta) / 100.0
    if np.any(base <= 0):
        raise ValueError("adjusted rates below -100% produce non-positive factors")
    dr = base**t
    dr[0] = 1.0
    return dr


def forward_gross_returns(factors: np.ndarray) -> SafeReturnSeries:
    """Wrap cumulative factors into a SafeReturnSeries.

    Args:
        factors: DR_0 .. DR_T, strictly positive, DR_0 = 1.

    Returns:
        Series whose gross_returns are the consecutive-factor ratios.

    Raises:
        ValueError: On non-positive factors or DR_0 != 1.
    """
    return SafeReturnSeries(discount_factors=np.asarray(factors, dtype=float))


def safe_return_series(curve: SpotCurve, delta: float, horizon: int) -> SafeReturnSeries:
    """Curve straight to per-period returns; the usual composition."""
    return forward_gross_returns(discount_factors(curve, delta, horizon))


def load_spot_curve(
    path: str,
    layout: str = "long",
    row_label: str | None = None,
    label: str | None = None,
) -> SpotCurve:
    """Read a spot curve from CSV.

    The native layout is long: header ``maturity_years,real_spot_rate_pct``
    and one row per maturity. ``layout="wide"`` accepts the
    Bank-of-England-style export where the header row carries maturities
    and each data row is one curve date; the selected row (by first-column
    value, default the last row) is flattened to one point per maturity.

    Args:
        path: CSV file location.
        layout: "long" (default) or "wide".
        row_label: Wide layout only: first-column value selecting the row.
        label: Provenance label; defaults to the file name or, for wide
            files, the selected row's label.

    Returns:
        Validated SpotCurve.

    Raises:
        DataFileError: On missing file, parse failures (with line number),
            or non-monotone maturities.
    """
    if layout not in ("long", "wide"):
        raise ConfigurationError(f"unknown curve layout {layout!r}")
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise DataFileError(f"cannot read curve file {path}: {exc}") from exc
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise DataFileError(f"{path}: curve file is empty")

    if layout == "wide":
        maturities, rates, picked = _flatten_wide(path, rows, row_label)
        curve_label = label if label is not None else f"{path}:{picked}"
    else:
        header = [c.strip() for c in rows[0]]
        if header[:2] != list(CURVE_COLUMNS):
            raise DataFileError(
                f"{path}: expected header {','.join(CURVE_COLUMNS)}, got {','.join(header)}"
            )
        maturities, rates = [], []
        for lineno, row in enumerate(rows[1:], start=2):
            if len(row) < 2:
                raise DataFileError(f"{path}: line {lineno}: expected 2 columns")
            try:
                maturities.append(float(row[0]))
                rates.append(float(row[1]))
            except ValueError as exc:
                raise DataFileError(f"{path}: line {lineno}: {exc}") from exc
        curve_label = label if label is not None else path

    try:
        return SpotCurve(
            maturities=np.asarray(maturities),
            rates_pct=np.asarray(rates),
            label=curve_label,
        )
    except ValueError as exc:
        raise DataFileError(f"{path}: {exc}") from exc


def _flatten_wide(
    path: str, rows: list[list[str]], row_label: str | None
) -> tuple[list[float], list[float], str]:
    """Pick one date row of a wide curve export and pair it with the header."""
    header = rows[0]
    try:
        maturities = [float(c) for c in header[1:] if c.strip()]
    except ValueError as exc:
        raise DataFileError(
            f"{path}: line 1: wide layout needs numeric maturities in the header: {exc}"
        ) from exc
    data = rows[1:]
    if not data:
        raise DataFileError(f"{path}: wide curve file has no data rows")
    if row_label is None:
        row = data[-1]
    else:
        matches = [r for r in data if r[0].strip() == row_label]
        if not matches:
            raise DataFileError(f"{path}: no row labeled {row_label!r}")
        row = matches[0]
    cells = row[1 : 1 + len(maturities)]
    pairs = []
    for m, cell in zip(maturities, cells):
        if not cell.strip():
            continue  # unquoted maturity for this date
        try:
            pairs.append((m, float(cell)))
        except ValueError as exc:
            raise DataFileError(f"{path}: row {row[0]!r}: {exc}") from exc
    if not pairs:
        raise DataFileError(f"{path}: row {row[0]!r} has no quoted rates")
    ms, rs = zip(*pairs)
    return list(ms), list(rs), row[0]
