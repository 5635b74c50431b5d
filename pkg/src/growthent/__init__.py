"""Exponential growth rate-constants, CPI decomposition and double-exponential
hyperinflation fits."""

from .decomposition import (
    DecompositionResult,
    ScenarioOutcome,
    classify_scenario,
    decompose_cpi,
    money_velocity_log_rate,
    predict_cpi_lambda,
    residual_series,
)
from .errors import InputError, NumericalError, SampleSpaceOverflow
from .growthfit import (
    GrowthFit,
    fit_rate_constant,
    growth_rate_from_lambda,
    lambda_from_growth_rate,
    t_quantile,
    velocity_at,
)
from .hyperinflation import (
    EntropySeries,
    HyperinflationFit,
    HyperinflationParams,
    continuity_check,
    detect_breakpoint,
    fit_hyperinflation,
    info_entropy_value,
    sample_space_size,
)
from .series import RelativeLogSeries, TimeSeries, impute_missing_years, load_series, normalize_to_reference
from .synth import NoiseSpec, generate_double_exponential_series, generate_exponential_series

__version__ = "0.1.0"

__all__ = [
    "DecompositionResult", "EntropySeries", "GrowthFit", "HyperinflationFit",
    "HyperinflationParams", "InputError", "NoiseSpec", "NumericalError",
    "RelativeLogSeries", "SampleSpaceOverflow", "ScenarioOutcome", "TimeSeries",
    "classify_scenario", "continuity_check", "decompose_cpi", "detect_breakpoint",
    "fit_hyperinflation", "fit_rate_constant", "generate_double_exponential_series",
    "generate_exponential_series", "growth_rate_from_lambda", "impute_missing_years",
    "info_entropy_value", "lambda_from_growth_rate", "load_series",
    "money_velocity_log_rate", "normalize_to_reference", "predict_cpi_lambda",
    "residual_series", "sample_space_size", "t_quantile", "velocity_at",
]
