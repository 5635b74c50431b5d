"""Two-regime (double-exponential) growth model.

Before the break ``t*`` the entropy grows linearly, ``v(t) = l1*t + v0``.
From ``t*`` on, the entropy itself grows exponentially from its value at the
break, ``v(t) = (l1*t* + v0) * exp(l2*(t - t*))``, so
``ln v(t) = ln(l1*t* + v0) + l2*(t - t*)``. The sample space is
``exp(v(t))``. With ``v0 = 0`` this is the plain two-stage expansion; a
nonzero ``v0`` carries the log of the initial price level.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, NumericalError, SampleSpaceOverflow
from .growthfit import growth_rate_from_lambda
from .series import TimeSeries

MIN_SEGMENT_POINTS = 3
_LOG_FLOAT_MAX = math.log(sys.float_info.max)


@dataclass(frozen=True)
class HyperinflationParams:
    lambda1: float
    v0: float
    t_star: float
    lambda2: float

    def __post_init__(self) -> None:
        for name in ("lambda1", "v0", "t_star", "lambda2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.t_star < 0:
            raise ValueError(f"t_star must be non-negative, got {self.t_star}")

    @property
    def break_entropy(self) -> float:
        """Entropy reached at the break, ``l1*t* + v0``."""
        return self.lambda1 * self.t_star + self.v0


@dataclass(frozen=True)
class SegmentFit:
    slope: float
    intercept: float
    r_squared: float
    sse: float
    n_obs: int


@dataclass(frozen=True)
class HyperinflationFit:
    params: HyperinflationParams
    constrained_intercept: float
    segment1: SegmentFit
    segment2: SegmentFit
    segment2_lambda_free: float
    segment2_intercept_free: float
    acceleration_rate: float
    sse_total: float
    degenerate: bool


@dataclass(frozen=True)
class BreakpointSearch:
    t_star: float
    sse_total: float
    fit: HyperinflationFit
    profile: dict[float, float] = field(default_factory=dict)

    @property
    def degenerate(self) -> bool:
        return self.fit.degenerate


@dataclass(frozen=True)
class EntropySeries:
    """Entropy ``v(t) = ln(price level)`` on t measured from the reference."""

    unit: str
    t: tuple[float, ...]
    v: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", tuple(float(x) for x in self.t))
        object.__setattr__(self, "v", tuple(float(x) for x in self.v))
        if len(self.t) != len(self.v):
            raise InputError("t and v lengths differ")
        if any(b <= a for a, b in zip(self.t, self.t[1:])):
            raise InputError("t values must be strictly increasing")

    @classmethod
    def from_series(cls, series: TimeSeries) -> EntropySeries:
        ref = series.reference_index
        return cls(
            unit=series.unit,
            t=[t - ref for t in series.times],
            v=[math.log(x) for x in series.values],
        )

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.t), np.asarray(self.v)


def _pre_branch(t, p: HyperinflationParams):
    return p.lambda1 * t + p.v0


def _post_branch(t, p: HyperinflationParams):
    return p.break_entropy * np.exp(p.lambda2 * (t - p.t_star))


def _check_t(t) -> None:
    if np.any(np.asarray(t) < 0):
        raise ValueError("t must be non-negative")


def info_entropy_value(t, p: HyperinflationParams):
    """Entropy (log sample-space size) at ``t``; accepts scalars or arrays."""
    _check_t(t)
    if np.ndim(t) == 0:
        return float(_pre_branch(t, p) if t < p.t_star else _post_branch(t, p))
    t = np.asarray(t, dtype=float)
    return np.where(t < p.t_star, _pre_branch(t, p), _post_branch(t, p))


def sample_space_size(t: float, p: HyperinflationParams) -> float:
    """``exp(info_entropy_value(t))``.

    Raises :class:`SampleSpaceOverflow` instead of returning ``inf`` once the
    double exponential leaves the float range.
    """
    h = info_entropy_value(t, p)
    if h > _LOG_FLOAT_MAX:
        raise SampleSpaceOverflow(t, h)
    return math.exp(h)


def continuity_check(p: HyperinflationParams) -> float:
    """Largest relative mismatch between the two branches at ``t*``, over
    both the entropy and the sample-space size."""
    h = p.break_entropy
    if not h > 0:
        raise ValueError(f"l1*t* + v0 must be positive, got {h}")
    pre = _pre_branch(p.t_star, p)
    post = float(_post_branch(p.t_star, p))
    entropy_mismatch = abs(pre - post) / abs(pre)
    # exp(pre)/exp(post) - 1, computed without overflowing
    size_mismatch = abs(math.expm1(pre - post))
    return max(entropy_mismatch, size_mismatch)


def _line_fit(x: np.ndarray, y: np.ndarray) -> SegmentFit:
    xm, ym = x.mean(), y.mean()
    dx = x - xm
    sxx = float(np.dot(dx, dx))
    if sxx == 0.0:
        raise NumericalError("segment has no spread in t")
    slope = float(np.dot(dx, y - ym)) / sxx
    intercept = float(ym - slope * xm)
    resid = y - (intercept + slope * x)
    sse = float(np.dot(resid, resid))
    syy = float(np.dot(y - ym, y - ym))
    r2 = 1.0 if syy == 0.0 else 1.0 - sse / syy
    return SegmentFit(slope, intercept, r2, sse, int(x.size))


def _origin_fit(x: np.ndarray, y: np.ndarray, intercept: float) -> SegmentFit:
    z = y - intercept
    sxx = float(np.dot(x, x))
    if sxx == 0.0:
        raise NumericalError("segment has no spread in t")
    slope = float(np.dot(x, z)) / sxx
    resid = z - slope * x
    sse = float(np.dot(resid, resid))
    szz = float(np.dot(z, z))
    r2 = 1.0 if szz == 0.0 else 1.0 - sse / szz
    return SegmentFit(slope, intercept, r2, sse, int(x.size))


def _fit_at(
    t: np.ndarray, v: np.ndarray, t_star: float, fix_v0: float | None
) -> HyperinflationFit:
    pre = t < t_star
    n1, n2 = int(pre.sum()), int((~pre).sum())
    if n1 < MIN_SEGMENT_POINTS or n2 < MIN_SEGMENT_POINTS:
        raise InputError(
            f"break at t={t_star:g} leaves {n1} points before and {n2} after; "
            f"need at least {MIN_SEGMENT_POINTS} on each side"
        )
    t1, v1 = t[pre], v[pre]
    seg1 = _line_fit(t1, v1) if fix_v0 is None else _origin_fit(t1, v1, fix_v0)
    lambda1, v0 = seg1.slope, seg1.intercept

    t2, v2 = t[~pre], v[~pre]
    if np.any(v2 <= 0):
        raise InputError("post-break entropy must be positive to take its logarithm")
    knot = lambda1 * t_star + v0
    if not knot > 0:
        raise NumericalError(f"fitted entropy at the break is not positive ({knot:g})")
    c = math.log(knot)
    s2, lv2 = t2 - t_star, np.log(v2)
    seg2 = _origin_fit(s2, lv2, c)
    free = _line_fit(s2, lv2)

    params = HyperinflationParams(lambda1=lambda1, v0=v0, t_star=float(t_star), lambda2=seg2.slope)
    return HyperinflationFit(
        params=params,
        constrained_intercept=c,
        segment1=seg1,
        segment2=seg2,
        segment2_lambda_free=free.slope,
        segment2_intercept_free=free.intercept,
        acceleration_rate=growth_rate_from_lambda(seg2.slope),
        sse_total=seg1.sse + seg2.sse,
        degenerate=_is_degenerate(t, v, params),
    )


def _is_degenerate(t: np.ndarray, v: np.ndarray, p: HyperinflationParams) -> bool:
    """No usable second regime: non-positive acceleration, or a single
    straight line in v fits the whole series at least as well as the
    two-regime curve."""
    if p.lambda2 <= 0:
        return True
    model = info_entropy_value(t, p)
    sse_model = float(np.sum((v - model) ** 2))
    sse_line = _line_fit(t, v).sse
    return sse_line <= sse_model


def fit_hyperinflation(
    series: EntropySeries,
    t_star: float | None = None,
    *,
    search_range: tuple[float, float] | None = None,
    fix_v0: float | None = None,
) -> HyperinflationFit:
    """Fit the two-regime model with the break at ``t_star``.

    Segment 1 (``t < t*``) is ordinary least squares of v on t, giving the
    pre-break rate and the offset ``v0`` (pass ``fix_v0`` to pin it, e.g. 0).
    Segment 2 regresses ``ln v`` on ``t - t*`` with the intercept held at
    ``ln(l1*t* + v0)`` so the curve is continuous at the break. When
    ``t_star`` is None the break is located with :func:`detect_breakpoint`.
    """
    if t_star is None:
        return detect_breakpoint(series, search_range, fix_v0=fix_v0).fit
    t, v = series.arrays()
    return _fit_at(t, v, float(t_star), fix_v0)


def feasible_breaks(series: EntropySeries, search_range: tuple[float, float] | None = None) -> list[int]:
    t = np.asarray(series.t)
    if t.size == 0:
        return []
    lo, hi = (math.ceil(t[0]), math.floor(t[-1])) if search_range is None else search_range
    out = []
    for c in range(math.ceil(lo), math.floor(hi) + 1):
        before = int(np.sum(t < c))
        if before >= MIN_SEGMENT_POINTS and t.size - before >= MIN_SEGMENT_POINTS:
            out.append(c)
    return out


def detect_breakpoint(
    series: EntropySeries,
    search_range: tuple[float, float] | None = None,
    *,
    fix_v0: float | None = None,
) -> BreakpointSearch:
    """Grid search over integer break candidates minimizing total SSE.

    The total is segment-1 SSE in v plus segment-2 SSE in ln v. Candidates
    that cannot be fit (non-positive entropy at or after the break) are
    skipped. Ties go to the smallest candidate.
    """
    candidates = feasible_breaks(series, search_range)
    if not candidates:
        raise InputError(
            f"no break candidate in {search_range or 'the series'} leaves "
            f"{MIN_SEGMENT_POINTS} points on each side"
        )
    t, v = series.arrays()
    best: HyperinflationFit | None = None
    profile: dict[float, float] = {}
    for c in candidates:
        try:
            fit = _fit_at(t, v, float(c), fix_v0)
        except (InputError, NumericalError):
            continue
        profile[float(c)] = fit.sse_total
        if best is None or fit.sse_total < best.sse_total:
            best = fit
    if best is None:
        raise NumericalError("no break candidate produced a valid fit")
    return BreakpointSearch(
        t_star=best.params.t_star, sse_total=best.sse_total, fit=best, profile=profile
    )
