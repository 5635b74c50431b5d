"""Through-origin log-linear growth fits and the rate/velocity algebra.

For a series ``y(t) = ln(G(t) / G(0))`` the model is ``y = lambda * t`` with
no intercept. ``lambda`` is the per-period rate-constant, ``exp(lambda) - 1``
the average growth rate, and ``lambda * t`` the growth "velocity" (the
information entropy of the expanding process at time t).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy import stats

from .errors import NumericalError

if TYPE_CHECKING:
    from .series import RelativeLogSeries

CONFIDENCE = 0.95

# residuals below this many ulps of the largest |y| are rounding noise
_ZERO_RESIDUAL_ULPS = 8


@dataclass(frozen=True)
class GrowthFit:
    lambda_: float
    ci_low: float
    ci_high: float
    r_squared: float
    df_residuals: int
    avg_growth_rate: float
    n_obs: int
    std_error: float = 0.0
    sse: float = 0.0
    degenerate: bool = False  # zero residuals: CI collapses, R^2 pinned to 1

    @property
    def ci_width(self) -> float:
        return self.ci_high - self.ci_low

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lambda_")
        return d


def t_quantile(p: float, df: float) -> float:
    """Quantile of Student's t distribution; ``df`` may be ``math.inf``."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if not df >= 1:
        raise ValueError(f"df must be >= 1, got {df}")
    if p == 0.5:
        return 0.0
    if math.isinf(df):
        return float(stats.norm.ppf(p))
    return float(stats.t.ppf(p, df))


def growth_rate_from_lambda(lambda_: float) -> float:
    return math.expm1(lambda_)


def lambda_from_growth_rate(r: float) -> float:
    if r <= -1:
        raise ValueError(f"growth rate must exceed -1, got {r}")
    return math.log1p(r)


def velocity_at(lambda_: float, t: float) -> float:
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    return lambda_ * t


def fit_arrays(t: np.ndarray, y: np.ndarray, confidence: float = CONFIDENCE) -> GrowthFit:
    """Least-squares slope of ``y`` on ``t`` through the origin.

    R^2 is the uncentered coefficient ``1 - SSE / sum(y^2)``; the residual
    degrees of freedom are ``n - 1``. Points at ``t = 0`` count toward ``n``.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    n = t.size
    if n < 2:
        raise NumericalError(f"need at least 2 points to fit a rate-constant, got {n}")
    stt = float(np.dot(t, t))
    if stt == 0.0:
        raise NumericalError("all observations are at t=0; the slope is undetermined")

    lam = float(np.dot(t, y)) / stt
    resid = y - lam * t
    ymax = float(np.max(np.abs(y)))
    degenerate = bool(np.max(np.abs(resid)) <= _ZERO_RESIDUAL_ULPS * np.finfo(float).eps * ymax)
    sse = 0.0 if degenerate else float(np.dot(resid, resid))
    syy = float(np.dot(y, y))

    df = n - 1
    se = math.sqrt(sse / df / stt)
    half = t_quantile(0.5 + confidence / 2, df) * se
    r2 = 1.0 if sse == 0.0 else 1.0 - sse / syy

    if not all(map(math.isfinite, (lam, se, half, r2))):
        raise NumericalError("non-finite regression result")
    return GrowthFit(
        lambda_=lam,
        ci_low=lam - half,
        ci_high=lam + half,
        r_squared=r2,
        df_residuals=df,
        avg_growth_rate=growth_rate_from_lambda(lam),
        n_obs=n,
        std_error=se,
        sse=sse,
        degenerate=degenerate,
    )


def fit_rate_constant(series: RelativeLogSeries, confidence: float = CONFIDENCE) -> GrowthFit:
    t, y = series.arrays()
    return fit_arrays(t, y, confidence)
