"""Seeded synthetic series for tests and demos.

Noise is Gaussian in log space (on the entropy) and is pinned to zero at
t=0 so the reference value stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hyperinflation import HyperinflationParams, info_entropy_value
from .series import TimeSeries


@dataclass(frozen=True)
class NoiseSpec:
    kind: str = "none"
    sigma: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("none", "gaussian"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if not self.sigma >= 0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}")

    def draw(self, n: int) -> np.ndarray:
        if self.kind == "none" or self.sigma == 0:
            return np.zeros(n)
        eps = self.sigma * np.random.default_rng(self.seed).standard_normal(n)
        eps[0] = 0.0
        return eps


NO_NOISE = NoiseSpec()


def generate_exponential_series(
    lambda_: float,
    initial: float,
    n: int,
    noise: NoiseSpec = NO_NOISE,
    *,
    name: str = "synthetic",
    unit: str = "annual",
    origin_label: int = 0,
) -> TimeSeries:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if not initial > 0:
        raise ValueError(f"initial must be positive, got {initial}")
    t = np.arange(n)
    values = initial * np.exp(lambda_ * t + noise.draw(n))
    return TimeSeries(
        name=name, unit=unit, times=tuple(range(n)), values=tuple(values), origin_label=origin_label
    )


def generate_double_exponential_series(
    p: HyperinflationParams,
    n: int,
    noise: NoiseSpec = NO_NOISE,
    *,
    name: str = "synthetic",
    unit: str = "monthly",
) -> TimeSeries:
    if not n > p.t_star + 2:
        raise ValueError(f"n must exceed t_star + 2 = {p.t_star + 2:g}, got {n}")
    t = np.arange(n, dtype=float)
    log_values = info_entropy_value(t, p) + noise.draw(n)
    if np.max(log_values) > math.log(np.finfo(float).max):
        raise OverflowError("generated values exceed the float range; shorten the series")
    return TimeSeries(name=name, unit=unit, times=tuple(range(n)), values=tuple(np.exp(log_values)))
