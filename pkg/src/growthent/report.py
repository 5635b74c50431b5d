"""JSON report and plot-data emission.

Reports are deterministic: sorted keys, no timestamps, inputs identified by
SHA-256 digest. Raw values keep full precision; ``*_pct`` fields are
display values rounded to 0.1 percentage points.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .decomposition import DecompositionResult, classify_scenario, money_velocity_log_rate
from .errors import NumericalError
from .growthfit import GrowthFit
from .hyperinflation import HyperinflationFit


def display_pct(fraction: float) -> float:
    return round(100.0 * fraction, 1)


def file_digest(path: str | Path) -> dict[str, str]:
    path = Path(path)
    return {"file": path.name, "sha256": hashlib.sha256(path.read_bytes()).hexdigest()}


def fit_summary(name: str, fit: GrowthFit, **extra: Any) -> dict[str, Any]:
    d = fit.to_dict()
    d["name"] = name
    d["r_squared_pct"] = display_pct(fit.r_squared)
    d["avg_growth_rate_pct"] = display_pct(fit.avg_growth_rate)
    d.update(extra)
    return d


def decomposition_summary(result: DecompositionResult, tol: float) -> dict[str, Any]:
    lam = {k: f.lambda_ for k, f in result.fits.items()}
    scenario = classify_scenario(lam["bms"], lam["gdp"], lam["sav"], tol)
    return {
        "residual_fit": fit_summary("res", result.residual_fit),
        "identity": {
            "max_abs_error": result.identity_max_abs_error,
            "holds": result.identity_max_abs_error <= 1e-12,
        },
        "hypothesis_exact": result.hypothesis_exact,
        "imputed_periods": {k: list(v) for k, v in result.imputed.items() if v},
        "predicted_cpi_lambda": lam["bms"] - lam["gdp"] - lam["sav"] - result.residual_fit.lambda_,
        "scenario": {
            "classification": scenario.classification,
            "predicted_lambda_cpi_without_residual": scenario.predicted_lambda_cpi,
            "tol": tol,
        },
        "money_velocity_log_rate": money_velocity_log_rate(lam["bms"], lam["gdp"]),
    }


def hyper_summary(fit: HyperinflationFit, searched: bool, profile: dict[float, float] | None) -> dict[str, Any]:
    p = fit.params
    seg = lambda s: {  # noqa: E731
        "slope": s.slope, "intercept": s.intercept, "r_squared": s.r_squared,
        "sse": s.sse, "n_obs": s.n_obs,
    }
    out = {
        "lambda1": p.lambda1,
        "v0": p.v0,
        "t_star": p.t_star,
        "lambda2": p.lambda2,
        "constrained_intercept": fit.constrained_intercept,
        "segment1": seg(fit.segment1),
        "segment2": seg(fit.segment2),
        "segment2_lambda_free": fit.segment2_lambda_free,
        "segment2_intercept_free": fit.segment2_intercept_free,
        "pre_break_growth_rate": math.expm1(p.lambda1),
        "pre_break_growth_rate_pct": display_pct(math.expm1(p.lambda1)),
        "acceleration_rate": fit.acceleration_rate,
        "acceleration_pct": display_pct(fit.acceleration_rate),
        "sse_total": fit.sse_total,
        "degenerate": fit.degenerate,
        "break_searched": searched,
    }
    if profile is not None:
        out["search_profile"] = [[t, sse] for t, sse in sorted(profile.items())]
    return out


def _check_finite(obj: Any, where: str = "report") -> None:
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise NumericalError(f"non-finite value in {where}")
    elif isinstance(obj, dict):
        for k, v in obj.items():
            _check_finite(v, f"{where}.{k}")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _check_finite(v, f"{where}[{i}]")


@dataclass
class Report:
    command: str
    inputs: dict[str, dict[str, str]] = field(default_factory=dict)
    fits: list[dict[str, Any]] = field(default_factory=list)
    decomposition: dict[str, Any] | None = None
    hyper: dict[str, Any] | None = None
    warnings: list[str] = field(default_factory=list)
    outputs: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "fits": self.fits,
            "decomposition": self.decomposition,
            "hyper": self.hyper,
            "warnings": self.warnings,
            "outputs": self.outputs,
        }

    def to_json(self) -> str:
        payload = self.to_dict()
        _check_finite(payload)
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def plot_csv(columns: dict[str, Sequence[float]]) -> str:
    """Render equal-length columns as CSV text, floats at full precision."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(columns))
    for t, *rest in zip(*columns.values()):
        t = float(t)
        w.writerow([int(t) if t.is_integer() else repr(t), *(repr(float(x)) for x in rest)])
    return buf.getvalue()
