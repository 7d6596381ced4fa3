"""Shared factories for building small, valid model objects in tests."""

from __future__ import annotations

import numpy as np

from pensim import (
    CashflowSchedule,
    EquityReturnParams,
    SafeReturnSeries,
    SimulationConfig,
)


def flat_safe_series(gross: float = 1.0, horizon: int = 10) -> SafeReturnSeries:
    """Safe-asset series with the same gross return every period."""
    factors = np.concatenate([[1.0], np.cumprod(np.full(horizon, float(gross)))])
    return SafeReturnSeries(discount_factors=factors)


def make_config(
    initial_assets: float = 100.0,
    alpha: float = 0.5,
    mean_log_return: float = 0.03,
    volatility: float = 0.1,
    mean_reversion=None,
    payments=(5.0,) * 10,
    start_year: int = 2021,
    safe_gross: float = 1.0,
    n_paths: int = 100,
    seed: int = 7,
) -> SimulationConfig:
    """A small but fully valid simulation config, keyword-tweakable."""
    schedule = CashflowSchedule(
        start_year=start_year, payments=np.asarray(payments, dtype=float)
    )
    return SimulationConfig(
        initial_assets=initial_assets,
        alpha=alpha,
        equity=EquityReturnParams(
            mean_log_return=mean_log_return,
            volatility=volatility,
            mean_reversion=mean_reversion,
        ),
        safe=flat_safe_series(safe_gross, schedule.horizon),
        schedule=schedule,
        n_paths=n_paths,
        seed=seed,
    )
