"""Stochastic gross returns for the risky (equity) asset.

Equity log returns are normal with constant mean, optionally with
negative serial dependence modeled as a moving-average error process:
the log return in period t is mu + e_t where

    e_t = v_t + coefficient * (v_(t-1) + ... + v_(t-lags))

and the v_t are i.i.d. N(0, volatility^2) innovations. Pre-sample
innovations (t <= 0) are zero, so the first ``lags`` periods carry a
shorter window; for later periods Var(e_t) = volatility^2 * (1 +
lags * coefficient^2). The gross return factor is exp(mu + e_t).

Randomness is reproducible from (seed, path_index) alone: each path
draws from its own generator keyed by both integers, so results do not
depend on how many paths run concurrently or in what order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

__all__ = [
    "MeanReversion",
    "EquityReturnParams",
    "ReturnPath",
    "innovation_stream",
    "sample_innovations",
    "apply_moving_average",
    "gross_equity_returns",
    "equity_return_path",
]


@dataclass(frozen=True)
class MeanReversion:
    """Moving-average error structure for the log-return process.

    Attributes:
        lags: Number of past innovations feeding each period's error.
        coefficient: Weight applied to each lagged innovation. Negative
            values make large shocks partially self-correcting.
    """

    lags: int
    coefficient: float

    def __post_init__(self) -> None:
        if self.lags < 1:
            raise ValueError(
                "mean reversion requires lags >= 1; omit it entirely for none"
            )
        if not np.isfinite(self.coefficient):
            raise ValueError("mean reversion coefficient must be finite")


@dataclass(frozen=True)
class EquityReturnParams:
    """Parameters of the annual equity log-return distribution.

    Attributes:
        mean_log_return: Mean of the log return per period (e.g. 0.045).
        volatility: Standard deviation of the innovations per period.
        mean_reversion: Optional MA structure; None means i.i.d. returns.
    """

    mean_log_return: float
    volatility: float
    mean_reversion: MeanReversion | None = None

    def __post_init__(self) -> None:
        if not np.isfinite(self.mean_log_return):
            raise ValueError("mean_log_return must be finite")
        if not np.isfinite(self.volatility) or self.volatility < 0:
            raise ValueError("volatility must be finite and >= 0")

    @property
    def lags(self) -> int:
        return 0 if self.mean_reversion is None else self.mean_reversion.lags

    @property
    def coefficient(self) -> float:
        return 0.0 if self.mean_reversion is None else self.mean_reversion.coefficient


@dataclass(frozen=True, eq=False)
class ReturnPath:
    """Per-period gross return factors for one or more paths.

    Attributes:
        gross_returns: Array of strictly positive factors; the last axis
            is time, so a single path is 1-D and a batch is 2-D.
    """

    gross_returns: np.ndarray

    def __post_init__(self) -> None:
        if not np.all(self.gross_returns > 0):
            raise ValueError("gross returns must be strictly positive")


def innovation_stream(seed: int, path_index: int) -> np.random.Generator:
    """Build the random generator owned by one simulation path.

    The stream is keyed by SeedSequence([seed, path_index]) on the
    default PCG64 bit generator, so any worker can rebuild the exact
    stream for a path without coordination. Normal variates come from
    numpy's standard_normal (ziggurat); the algorithm is fixed by
    pinning the bit generator here.

    Args:
        seed: Scenario-level seed, an integer in [0, 2**64).
        path_index: Zero-based path number.

    Returns:
        A freshly positioned numpy Generator.
    """
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an integer in [0, 2**64)")
    if path_index < 0:
        raise ValueError("path_index must be >= 0")
    return np.random.default_rng(np.random.SeedSequence([seed, path_index]))


def sample_innovations(
    params: EquityReturnParams, horizon: int, stream: np.random.Generator
) -> np.ndarray:
    """Draw the i.i.d. normal innovations for one path.

    Args:
        params: Return-model parameters; only volatility is used here.
        horizon: Number of periods, >= 1.
        stream: Generator positioned for this path (see innovation_stream).

    Returns:
        Array of ``horizon`` draws from N(0, volatility^2).

    Raises:
        ValueError: If horizon < 1.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    return params.volatility * stream.standard_normal(horizon)


def apply_moving_average(
    innovations: np.ndarray, lags: int, coefficient: float
) -> np.ndarray:
    """Turn raw innovations into serially dependent error terms.

    Computes e_t = v_t + coefficient * sum of the previous ``lags``
    innovations, with pre-sample innovations taken as zero. Operates on
    the last axis, so a (paths, horizon) batch works in one call.
    ``lags`` = 0 returns a copy of the input unchanged.

    Args:
        innovations: Innovation draws; last axis is time.
        lags: Window length, >= 0.
        coefficient: Weight on each lagged innovation.

    Returns:
        Array of error terms, same shape as the input.
    """
    v = np.asarray(innovations, dtype=float)
    if lags < 0:
        raise ValueError("lags must be >= 0")
    if lags == 0:
        return v.copy()
    pad = np.zeros(v.shape[:-1] + (lags,))
    padded = np.concatenate([pad, v], axis=-1)
    # window t holds v_(t-lags) .. v_(t-1), zeros where t-i < 0
    windows = sliding_window_view(padded, lags, axis=-1)[..., : v.shape[-1], :]
    return v + coefficient * windows.sum(axis=-1)


def gross_equity_returns(
    params: EquityReturnParams, errors: np.ndarray
) -> ReturnPath:
    """Convert error terms into gross return factors exp(mu + e_t).

    Args:
        params: Return-model parameters; only mean_log_return is used.
        errors: Error terms from apply_moving_average.

    Returns:
        ReturnPath with strictly positive factors, same shape as errors.
    """
    e = np.asarray(errors, dtype=float)
    if not np.all(np.isfinite(e)):
        raise ValueError("error terms must be finite")
    return ReturnPath(gross_returns=np.exp(params.mean_log_return + e))


def equity_return_path(
    params: EquityReturnParams, horizon: int, seed: int, path_index: int
) -> np.ndarray:
    """Full pipeline for one path: innovations -> MA errors -> factors.

    This is the default return source used by the engine.
    """
    stream = innovation_stream(seed, path_index)
    v = sample_innovations(params, horizon, stream)
    e = apply_moving_average(v, params.lags, params.coefficient)
    return gross_equity_returns(params, e).gross_returns
