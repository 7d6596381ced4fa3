"""The promised pension payments the fund must meet.

The schedule is loaded from a CSV with a ``year`` column and one column
per benefit component, values in real billions of pounds. The caller
names which components to sum; the file's horizon (its longest column)
is the simulation horizon.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pandas as pd

from .errors import DataFileError

__all__ = ["CashflowSchedule", "load_cashflows"]


@dataclass(frozen=True, eq=False)
class CashflowSchedule:
    """Yearly payments p_t in real GBP billions.

    Attributes:
        start_year: Calendar year of the first payment. Period t (1-based)
            falls in calendar year start_year + t - 1.
        payments: Non-negative amounts, one per period; length is the
            simulation horizon T.
    """

    start_year: int
    payments: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.payments, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("payments must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(p)):
            raise ValueError("payments must be finite")
        if np.any(p < 0):
            raise ValueError("payments must be >= 0")
        object.__setattr__(self, "payments", p)

    @property
    def horizon(self) -> int:
        return self.payments.size

    @property
    def years(self) -> np.ndarray:
        """Calendar year of each period, aligned with payments."""
        return self.start_year + np.arange(self.horizon)


def load_cashflows(path: str, components: list[str] | tuple[str, ...]) -> CashflowSchedule:
    """Load a payment schedule, summing the named component columns.

    Empty cells read as 0, which is how component columns shorter than
    the file's horizon are represented (the schedule runs until the file
    ends). Years must be consecutive so that row order and period index
    agree.

    Args:
        path: CSV file with header ``year,<component columns...>``.
        components: Column names to sum into the payment series.

    Returns:
        Validated CashflowSchedule.

    Raises:
        DataFileError: Missing file, unknown component column, negative
            payment values, or non-consecutive years.
    """
    if not components:
        raise DataFileError("at least one cashflow component must be named")
    try:
        frame = pd.read_csv(path)
    except OSError as exc:
        raise DataFileError(f"cannot read cashflow file {path}: {exc}") from exc
    except (pd.errors.ParserError, pd.errors.EmptyDataError, ValueError) as exc:
        raise DataFileError(f"{path}: {exc}") from exc

    if "year" not in frame.columns:
        raise DataFileError(f"{path}: missing required column 'year'")
    missing = [c for c in components if c not in frame.columns]
    if missing:
        raise DataFileError(f"{path}: unknown component column(s): {', '.join(missing)}")
    if len(frame) == 0:
        raise DataFileError(f"{path}: no payment rows")

    years = frame["year"].to_numpy()
    if np.any(np.diff(years) != 1):
        raise DataFileError(f"{path}: years must be consecutive")

    columns = []
    for name in components:
        raw = frame[name]
        col = pd.to_numeric(raw, errors="coerce")
        garbled = col.isna() & raw.notna()
        if garbled.any():
            year = frame["year"][garbled].iloc[0]
            raise DataFileError(
                f"{path}: non-numeric value in column {name!r} at year {year}"
            )
        if (col < 0).any():
            year = frame["year"][col < 0].iloc[0]
            raise DataFileError(
                f"{path}: negative payment value in column {name!r} at year {year}"
            )
        columns.append(col.fillna(0.0).to_numpy(dtype=float))

    return CashflowSchedule(
        start_year=int(years[0]), payments=np.sum(columns, axis=0)
    )
