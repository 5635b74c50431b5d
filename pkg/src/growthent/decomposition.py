"""CPI decomposition: vCPI(t) = vBMS(t) - vGDP(t) - vSAV(t) - RES(t).

Each component is a log-relative series (its velocity). RES is whatever is
left after subtracting GDP, savings and CPI velocities from the broad money
velocity, so the identity closes by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .growthfit import GrowthFit, fit_rate_constant
from .series import RelativeLogSeries, TimeSeries, impute_missing_years, normalize_to_reference

COMPONENTS = ("bms", "gdp", "sav", "cpi")
SCENARIOS = ("stagflation", "deflation", "recession", "baseline")
DEFAULT_SCENARIO_TOL = 0.001
HYPOTHESIS_TOL = 1e-9


@dataclass(frozen=True)
class DecompositionResult:
    fits: dict[str, GrowthFit]
    components: dict[str, RelativeLogSeries]
    residual_series: RelativeLogSeries
    residual_fit: GrowthFit
    identity_max_abs_error: float
    imputed: dict[str, tuple[int, ...]]

    @property
    def hypothesis_exact(self) -> bool:
        """True when the identity holds with no residual growth."""
        return abs(self.residual_fit.lambda_) <= HYPOTHESIS_TOL


@dataclass(frozen=True)
class ScenarioOutcome:
    predicted_lambda_cpi: float
    classification: str


def _check_aligned(series: list[RelativeLogSeries]) -> None:
    first = series[0]
    for s in series[1:]:
        if s.unit != first.unit:
            raise InputError(f"unit mismatch: {first.name or 'first'}={first.unit}, {s.name}={s.unit}")
        if s.t != first.t:
            raise InputError(f"time grid mismatch between {first.name or 'first'} and {s.name or 'series'}")


def residual_series(
    vbms: RelativeLogSeries,
    vgdp: RelativeLogSeries,
    vsav: RelativeLogSeries,
    vcpi: RelativeLogSeries,
) -> RelativeLogSeries:
    _check_aligned([vbms, vgdp, vsav, vcpi])
    b, g, s, c = (np.asarray(x.y) for x in (vbms, vgdp, vsav, vcpi))
    res = b - g - s - c
    return RelativeLogSeries(unit=vbms.unit, t=vbms.t, y=res, name="RES")


def identity_error(
    components: dict[str, RelativeLogSeries], residual: RelativeLogSeries
) -> float:
    b, g, s, c = (np.asarray(components[k].y) for k in COMPONENTS)
    err = b - g - s - c - np.asarray(residual.y)
    return float(np.max(np.abs(err))) if err.size else 0.0


def decompose_cpi(
    bms: TimeSeries, gdp: TimeSeries, sav: TimeSeries, cpi: TimeSeries
) -> DecompositionResult:
    """Fit every component, build RES(t) and fit it.

    BMS, GDP and CPI must share one period grid and reference period.
    Savings may be observed on a subset of that grid; its missing periods are
    imputed for the residual series while its reported fit uses the
    observed points only.
    """
    raw = {"bms": bms, "gdp": gdp, "sav": sav, "cpi": cpi}
    ref_label = bms.reference_label
    for key, s in raw.items():
        if s.reference_label != ref_label:
            raise InputError(
                f"{key}: reference period {s.reference_label} differs from bms ({ref_label})"
            )
        if s.unit != bms.unit:
            raise InputError(f"{key}: unit {s.unit} differs from bms ({bms.unit})")
    trimmed = {k: s.since_reference() for k, s in raw.items()}
    grid = trimmed["bms"].times
    for key in ("gdp", "cpi"):
        if trimmed[key].times != grid:
            raise InputError(f"{key}: period grid differs from bms")
    sav_t = trimmed["sav"]
    if not set(sav_t.times) <= set(grid):
        raise InputError("sav: periods outside the bms grid")
    trimmed["sav"] = impute_missing_years(sav_t, grid)

    components = {k: normalize_to_reference(s) for k, s in trimmed.items()}
    fits = {
        k: fit_rate_constant(normalize_to_reference(s.observed())) for k, s in trimmed.items()
    }
    res = residual_series(*(components[k] for k in COMPONENTS))
    return DecompositionResult(
        fits=fits,
        components=components,
        residual_series=res,
        residual_fit=fit_rate_constant(res),
        identity_max_abs_error=identity_error(components, res),
        imputed={k: tuple(sorted(s.imputed)) for k, s in trimmed.items()},
    )


def predict_cpi_lambda(
    lambda_bms: float, lambda_gdp: float, lambda_sav: float, lambda_res: float = 0.0
) -> float:
    return lambda_bms - lambda_gdp - lambda_sav - lambda_res


def classify_scenario(
    lambda_bms: float, lambda_gdp: float, lambda_sav: float, tol: float = DEFAULT_SCENARIO_TOL
) -> ScenarioOutcome:
    """Label the sign pattern of the component rate-constants.

    Precedence is recession, deflation, stagflation, then baseline.
    """
    if tol < 0:
        raise ValueError(f"tol must be non-negative, got {tol}")
    predicted = predict_cpi_lambda(lambda_bms, lambda_gdp, lambda_sav)
    if lambda_gdp < -tol:
        label = "recession"
    elif predicted < -tol:
        label = "deflation"
    elif abs(lambda_gdp) <= tol and abs(lambda_sav) <= tol:
        label = "stagflation"
    else:
        label = "baseline"
    return ScenarioOutcome(predicted_lambda_cpi=predicted, classification=label)


def money_velocity_log_rate(lambda_bms: float, lambda_gdp: float) -> float:
    """Per-period rate of change of ln(GDP / money supply)."""
    return -(lambda_bms - lambda_gdp)
