"""Time-series containers, CSV loading, log-normalization and imputation.

Periods are integer indices counted from the earliest period in the input.
Rate-constants are always per period of the series' own unit; no conversion
between annual and monthly series is attempted.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError
from .growthfit import fit_rate_constant

UNITS = ("annual", "monthly")


@dataclass(frozen=True)
class TimeSeries:
    """Ordered positive observations on an integer period grid.

    ``origin_label`` is the period label (year or month counter) of index 0,
    so ``origin_label + index`` recovers the label. ``imputed`` holds the
    indices whose values were filled in rather than observed.
    """

    name: str
    unit: str
    times: tuple[int, ...]
    values: tuple[float, ...]
    reference_index: int = 0
    origin_label: int = 0
    imputed: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        times = tuple(int(t) for t in self.times)
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "imputed", frozenset(int(i) for i in self.imputed))

        if self.unit not in UNITS:
            raise InputError(f"{self.name}: unknown period unit {self.unit!r}")
        if len(times) != len(values):
            raise InputError(f"{self.name}: {len(times)} periods but {len(values)} values")
        if not times:
            raise InputError(f"{self.name}: empty series")
        for a, b in zip(times, times[1:]):
            if b <= a:
                raise InputError(f"{self.name}: periods must be strictly increasing ({a}, {b})")
        for t, v in zip(times, values):
            if not math.isfinite(v) or v <= 0:
                raise InputError(f"{self.name}: value at period index {t} must be positive, got {v}")
        if self.reference_index not in times:
            raise InputError(f"{self.name}: reference index {self.reference_index} not in series")
        if not self.imputed <= set(times):
            raise InputError(f"{self.name}: imputed indices outside the series")

    @property
    def points(self) -> list[tuple[int, float]]:
        return list(zip(self.times, self.values))

    @property
    def reference_value(self) -> float:
        return self.values[self.times.index(self.reference_index)]

    @property
    def reference_label(self) -> int:
        return self.origin_label + self.reference_index

    def labels(self) -> list[int]:
        return [self.origin_label + t for t in self.times]

    def observed(self) -> TimeSeries:
        """The series with imputed points removed."""
        if not self.imputed:
            return self
        keep = [i for i, t in enumerate(self.times) if t not in self.imputed]
        return TimeSeries(
            name=self.name,
            unit=self.unit,
            times=tuple(self.times[i] for i in keep),
            values=tuple(self.values[i] for i in keep),
            reference_index=self.reference_index,
            origin_label=self.origin_label,
        )

    def since_reference(self) -> TimeSeries:
        """Drop points that precede the reference period and re-index so the
        reference is index 0."""
        ref = self.reference_index
        keep = [i for i, t in enumerate(self.times) if t >= ref]
        return TimeSeries(
            name=self.name,
            unit=self.unit,
            times=tuple(self.times[i] - ref for i in keep),
            values=tuple(self.values[i] for i in keep),
            reference_index=0,
            origin_label=self.origin_label + ref,
            imputed=frozenset(t - ref for t in self.imputed if t >= ref),
        )

    def scaled(self, k: float) -> TimeSeries:
        return TimeSeries(
            name=self.name,
            unit=self.unit,
            times=self.times,
            values=tuple(v * k for v in self.values),
            reference_index=self.reference_index,
            origin_label=self.origin_label,
            imputed=self.imputed,
        )


@dataclass(frozen=True)
class RelativeLogSeries:
    """Pairs ``(t, y)`` with ``y = ln(value / reference value)``."""

    unit: str
    t: tuple[float, ...]
    y: tuple[float, ...]
    name: str = ""

    def __post_init__(self) -> None:
        t = tuple(float(x) for x in self.t)
        y = tuple(float(x) for x in self.y)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "y", y)
        if len(t) != len(y):
            raise InputError("t and y lengths differ")
        for a, b in zip(t, t[1:]):
            if b <= a:
                raise InputError("t values must be strictly increasing")
        if t and t[0] < 0:
            raise InputError("t values must be non-negative")
        for ti, yi in zip(t, y):
            if not math.isfinite(yi):
                raise InputError(f"non-finite log value at t={ti:g}")
            if ti == 0 and yi != 0:
                raise InputError(f"y at t=0 must be 0, got {yi!r}")

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.t, self.y))

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.t, dtype=float), np.asarray(self.y, dtype=float)


def _parse_period(cell: str, unit: str, row: int) -> int:
    text = cell.strip()
    try:
        label = int(text)
    except ValueError:
        raise InputError(f"row {row}: cannot parse period {cell!r}") from None
    if unit == "annual" and not (len(text) == 4 and text.isdigit()):
        raise InputError(f"row {row}: annual period must be a 4-digit year, got {cell!r}")
    return label


def _column(header: list[str] | None, spec: str | int | None, default: int) -> int:
    if spec is None:
        if header is not None:
            names = [h.strip().lower() for h in header]
            wanted = "period" if default == 0 else "value"
            if wanted in names:
                return names.index(wanted)
        return default
    if isinstance(spec, int):
        return spec
    if header is None:
        raise InputError(f"column {spec!r} requested but the file has no header")
    names = [h.strip() for h in header]
    if spec not in names:
        raise InputError(f"column {spec!r} not found in header {names}")
    return names.index(spec)


def load_series(
    path: str | Path,
    *,
    name: str | None = None,
    unit: str = "annual",
    period_column: str | int | None = None,
    value_column: str | int | None = None,
    reference: int | None = None,
) -> TimeSeries:
    """Read a ``period,value`` CSV into a validated :class:`TimeSeries`.

    A header row is optional and detected by a non-numeric first cell.
    ``reference`` is a period label (e.g. ``2001``); the earliest period is
    used when omitted. Row numbers in error messages are 1-based file lines.
    """
    path = Path(path)
    if unit not in UNITS:
        raise InputError(f"unknown period unit {unit!r}")
    if not path.is_file():
        raise InputError(f"{path}: no such file")

    with path.open(newline="", encoding="utf-8") as fh:
        rows = [(i, r) for i, r in enumerate(csv.reader(fh), start=1) if any(c.strip() for c in r)]
    if not rows:
        raise InputError(f"{path}: empty file")

    header = None
    first = rows[0][1]
    try:
        float(first[0])
    except ValueError:
        header = first
        rows = rows[1:]
    pcol = _column(header, period_column, 0)
    vcol = _column(header, value_column, 1)

    seen: dict[int, int] = {}
    parsed: list[tuple[int, float]] = []
    for lineno, row in rows:
        if len(row) <= max(pcol, vcol):
            raise InputError(f"row {lineno}: expected at least {max(pcol, vcol) + 1} columns")
        label = _parse_period(row[pcol], unit, lineno)
        try:
            value = float(row[vcol])
        except ValueError:
            raise InputError(f"row {lineno}: cannot parse value {row[vcol]!r}") from None
        if not math.isfinite(value) or value <= 0:
            raise InputError(f"row {lineno}: value must be positive, got {row[vcol].strip()!r}")
        if label in seen:
            raise InputError(f"row {lineno}: duplicate period {label} (first seen on row {seen[label]})")
        seen[label] = lineno
        parsed.append((label, value))
    if not parsed:
        raise InputError(f"{path}: no data rows")

    parsed.sort()
    origin = parsed[0][0]
    if reference is None:
        reference = origin
    if reference not in seen:
        raise InputError(f"{path}: reference period {reference} not present")
    return TimeSeries(
        name=name or path.stem,
        unit=unit,
        times=tuple(p - origin for p, _ in parsed),
        values=tuple(v for _, v in parsed),
        reference_index=reference - origin,
        origin_label=origin,
    )


def normalize_to_reference(series: TimeSeries) -> RelativeLogSeries:
    """Log of each value relative to the reference value, on t measured
    from the reference period."""
    ref = series.reference_index
    if series.times[0] < ref:
        raise InputError(
            f"{series.name}: points precede the reference period; trim with since_reference()"
        )
    ref_value = series.reference_value
    t = [ti - ref for ti in series.times]
    # exact 0 at the reference, not log(x/x) rounding
    y = [0.0 if ti == ref else math.log(v / ref_value) for ti, v in zip(series.times, series.values)]
    return RelativeLogSeries(unit=series.unit, t=t, y=y, name=series.name)


def impute_missing_years(sparse: TimeSeries, target_indices: Iterable[int]) -> TimeSeries:
    """Fill missing periods from a through-origin fit on the observed points.

    The rate-constant is estimated on the observed points only; each missing
    index ``i`` gets ``value(ref) * exp(lambda * (i - ref))``. Observed values
    are kept verbatim and the filled indices are recorded in ``imputed``.
    """
    targets = sorted(set(int(i) for i in target_indices))
    observed = sparse.observed()
    if len(observed.times) < 2:
        raise InputError(f"{sparse.name}: need at least 2 observed points to impute")
    missing_targets = set(sparse.times) - set(targets)
    if missing_targets:
        raise InputError(
            f"{sparse.name}: target indices must include every existing index "
            f"(missing {sorted(missing_targets)})"
        )
    if set(targets) == set(sparse.times):
        return sparse

    fit = fit_rate_constant(normalize_to_reference(observed.since_reference()))
    ref = sparse.reference_index
    ref_value = sparse.reference_value
    existing = dict(zip(sparse.times, sparse.values))
    values = []
    filled = set(sparse.imputed)
    for i in targets:
        if i in existing:
            values.append(existing[i])
        else:
            values.append(ref_value * math.exp(fit.lambda_ * (i - ref)))
            filled.add(i)
    return TimeSeries(
        name=sparse.name,
        unit=sparse.unit,
        times=tuple(targets),
        values=tuple(values),
        reference_index=ref,
        origin_label=sparse.origin_label,
        imputed=frozenset(filled),
    )


def series_from_values(
    values: Sequence[float],
    *,
    name: str = "series",
    unit: str = "annual",
    origin_label: int = 0,
) -> TimeSeries:
    """Convenience constructor for a contiguous grid starting at index 0."""
    return TimeSeries(
        name=name,
        unit=unit,
        times=tuple(range(len(values))),
        values=tuple(values),
        origin_label=origin_label,
    )
