"""Multi-asset no-transaction-band portfolio optimizer and simulator."""

from ._core import (
    ConfigurationError,
    DifferenceSeries,
    DimensionMismatchError,
    DomainValueError,
    EnsembleSummary,
    GridMismatchError,
    InvalidCorrelationError,
    LtgmModel,
    MarketParams,
    NotPositiveDefiniteError,
    __version__,
    band_width_general,
    band_width_ltgm,
    compare,
    d_matrix,
    expected_log_payoff,
    ltgm_value,
    optimal_weights,
    run_ensemble,
)

__all__ = [
    "ConfigurationError",
    "DifferenceSeries",
    "DimensionMismatchError",
    "DomainValueError",
    "EnsembleSummary",
    "GridMismatchError",
    "InvalidCorrelationError",
    "LtgmModel",
    "MarketParams",
    "NotPositiveDefiniteError",
    "__version__",
    "band_width_general",
    "band_width_ltgm",
    "compare",
    "d_matrix",
    "expected_log_payoff",
    "ltgm_value",
    "optimal_weights",
    "run_ensemble",
]
