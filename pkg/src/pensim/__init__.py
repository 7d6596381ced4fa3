"""Monte Carlo ruin and surplus analysis for a closed defined-benefit fund.

A fund holding a fixed equity/bond mix pays a promised schedule of
real cashflows with no further contributions. The package simulates the
asset path ensemble, reports exhaustion (ruin) probabilities by year,
terminal-surplus exceedance probabilities, and percentile fan charts,
and calibrates equity return assumptions from historical panels.
"""

__version__ = "0.1.0"

from .calibration import (
    CountryYearRecord,
    MomentEstimate,
    estimate_moments,
    gdp_weights,
    global_weighted_return_series,
    load_panel,
    panel_moments,
    real_return,
)
from .cashflows import CashflowSchedule, load_cashflows
from .engine import (
    DEFAULT_ALPHA_GRID,
    DEFAULT_N_PATHS,
    DEFAULT_PERCENTILES,
    DEFAULT_THRESHOLDS,
    EnsembleStats,
    PathResult,
    SimulationConfig,
    quantile_fan,
    run_ensemble,
    simulate_path,
    surplus_exceedance,
    sweep_allocation,
)
from .errors import ConfigurationError, DataFileError, PensimError
from .returns import (
    EquityReturnParams,
    MeanReversion,
    ReturnPath,
    apply_moving_average,
    equity_return_path,
    gross_equity_returns,
    innovation_stream,
    sample_innovations,
)
from .scenario import Scenario, build_config, load_scenario
from .yieldcurve import (
    SafeReturnSeries,
    SpotCurve,
    discount_factors,
    forward_gross_returns,
    load_spot_curve,
    safe_return_series,
)

__all__ = [
    "__version__",
    "DEFAULT_ALPHA_GRID",
    "DEFAULT_N_PATHS",
    "DEFAULT_PERCENTILES",
    "DEFAULT_THRESHOLDS",
    "CashflowSchedule",
    "ConfigurationError",
    "CountryYearRecord",
    "DataFileError",
    "EnsembleStats",
    "EquityReturnParams",
    "MeanReversion",
    "MomentEstimate",
    "PathResult",
    "PensimError",
    "ReturnPath",
    "Scenario",
    "SafeReturnSeries",
    "SimulationConfig",
    "SpotCurve",
    "apply_moving_average",
    "build_config",
    "discount_factors",
    "equity_return_path",
    "estimate_moments",
    "forward_gross_returns",
    "gdp_weights",
    "global_weighted_return_series",
    "gross_equity_returns",
    "innovation_stream",
    "load_cashflows",
    "load_panel",
    "load_scenario",
    "load_spot_curve",
    "panel_moments",
    "quantile_fan",
    "real_return",
    "run_ensemble",
    "safe_return_series",
    "sample_innovations",
    "simulate_path",
    "surplus_exceedance",
    "sweep_allocation",
]
