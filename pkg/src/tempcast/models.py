"""Additive seasonal exponential smoothing and two naive baselines.

The smoother keeps three components: a level (de-seasonalized value at
the most recent observation), a linear trend in Kelvin per day, and a
ring of one additive correction per season phase. Consuming observation
``a`` updates them as

    level' = alpha * (a - c_old) + (1 - alpha) * (level + trend)
    trend' = beta  * (level' - level) + (1 - beta) * trend
    c_new  = gamma * (a - level') + (1 - gamma) * c_old

where ``c_old`` is the ring slot written one full season earlier for the
same phase. A lead-``m`` forecast is ``level + m * trend`` plus the
stored correction for the target day's phase; the ring wraps, so the
seasonal shape repeats verbatim beyond one season while the trend keeps
extrapolating.

The baselines repeat the last observed value (persistence) or the mean
of the whole training window (average), independent of the lead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyInputError,
    InvalidLeadError,
    NonFiniteError,
    TooShortError,
)
from .series import TimeSeries


@dataclass(frozen=True)
class SmoothingParams:
    """Smoothing coefficients plus the season length in days.

    Coefficients live in [0, 1]; zero freezes a component at its
    initialized value, one makes it follow the data with no memory.
    """

    alpha: float
    beta: float
    gamma: float
    season_length: int

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if self.season_length < 2:
            raise ValueError(
                f"season_length must be at least 2, got {self.season_length}"
            )


@dataclass(frozen=True)
class HWState:
    """Smoother state between observations.

    ``seasonal[phase]`` is the correction for the next incoming
    observation's season phase; ``steps_seen`` counts update calls since
    initialization. Instances are immutable.
    """

    level: float
    trend: float
    seasonal: np.ndarray
    phase: int
    steps_seen: int = 0

    def __post_init__(self):
        ring = np.array(self.seasonal, dtype=np.float64)
        ring.flags.writeable = False
        object.__setattr__(self, "seasonal", ring)
        if ring.ndim != 1 or ring.size < 2:
            raise ValueError("seasonal ring needs at least two phases")
        if not 0 <= self.phase < ring.size:
            raise ValueError(
                f"phase {self.phase} outside ring of length {ring.size}"
            )


def _train_values(train) -> np.ndarray:
    values = train.values if isinstance(train, TimeSeries) else train
    return np.asarray(values, dtype=np.float64)


def _initial_components(
    values: np.ndarray, season_length: int
) -> tuple[float, float, np.ndarray]:
    """Level, trend and seasonal ring estimated from a training prefix.

    Trend is the per-day gap between the first two season means. Each
    ring slot averages its phase's deviation from the season mean over
    every complete season, minus the within-season ramp the trend itself
    explains; without that subtraction a trending series would leak a
    sawtooth into the ring. The level is the first season's mean pulled
    back to the day before the first observation, so an update pass may
    start at the very first training value. On a series that is exactly
    linear plus a zero-sum cycle these estimates recover the generating
    components, and the update recursions then hold them fixed at every
    step for any coefficients.
    """
    L = season_length
    n = values.size
    if n < 2 * L:
        raise TooShortError(
            f"need at least {2 * L} observations to initialize, got {n}"
        )
    first_mean = float(values[:L].mean())
    second_mean = float(values[L : 2 * L].mean())
    trend = (second_mean - first_mean) / L

    n_seasons = n // L
    by_season = values[: n_seasons * L].reshape(n_seasons, L)
    deviations = by_season - by_season.mean(axis=1, keepdims=True)
    ramp = trend * (np.arange(L, dtype=np.float64) - (L - 1) / 2.0)
    seasonal = deviations.mean(axis=0) - ramp

    level = first_mean - trend * (L + 1) / 2.0
    return level, trend, seasonal


def init_state(train, params: SmoothingParams) -> HWState:
    """Estimate a starting state from at least two full seasons.

    The returned state is positioned before the first observation
    (``steps_seen == 0``, phase 0): folding the training values through
    :func:`hw_update` replays the window from the top.
    """
    values = _train_values(train)
    level, trend, seasonal = _initial_components(values, params.season_length)
    return HWState(level=level, trend=trend, seasonal=seasonal, phase=0)


def hw_update(
    state: HWState, observation: float, params: SmoothingParams
) -> HWState:
    """Consume one observation and return the advanced state.

    Pure: the input state is untouched. The ring slot at the current
    phase is read as the season-old correction and replaced with the
    fresh one; the phase cursor then advances by one, modulo the season
    length.
    """
    if not math.isfinite(observation):
        raise NonFiniteError(f"observation is not finite: {observation!r}")
    L = params.season_length
    if state.seasonal.size != L:
        raise ValueError(
            f"state ring has {state.seasonal.size} slots, params expect {L}"
        )
    c_old = float(state.seasonal[state.phase])
    level = params.alpha * (observation - c_old) + (1.0 - params.alpha) * (
        state.level + state.trend
    )
    trend = params.beta * (level - state.level) + (1.0 - params.beta) * state.trend
    c_new = params.gamma * (observation - level) + (1.0 - params.gamma) * c_old
    ring = np.array(state.seasonal)
    ring[state.phase] = c_new
    return HWState(
        level=level,
        trend=trend,
        seasonal=ring,
        phase=(state.phase + 1) % L,
        steps_seen=state.steps_seen + 1,
    )


def hw_fit(train, params: SmoothingParams) -> HWState:
    """Initialize on the training window, then fold every observation
    through :func:`hw_update` in order. Deterministic."""
    values = _train_values(train)
    state = init_state(values, params)
    for observation in values.tolist():
        state = hw_update(state, observation, params)
    return state


def hw_forecast(state: HWState, m: int, params: SmoothingParams) -> float:
    """Project the state ``m`` days ahead.

    Level plus ``m`` times the trend plus the ring correction for the
    target day's phase, which sits ``m - 1`` slots past the cursor.
    """
    if m < 1:
        raise InvalidLeadError(f"lead must be at least 1 day, got {m}")
    L = params.season_length
    slot = (state.phase + (m - 1)) % L
    return float(state.level + m * state.trend + state.seasonal[slot])


def persistence_forecast(train, m: int = 1) -> float:
    """Repeat the last observed value, whatever the lead."""
    if m < 1:
        raise InvalidLeadError(f"lead must be at least 1 day, got {m}")
    values = _train_values(train)
    if values.size == 0:
        raise EmptyInputError("persistence forecast needs an observation")
    return float(values[-1])


def average_forecast(train, m: int = 1) -> float:
    """Predict the mean of the whole training window, whatever the lead."""
    if m < 1:
        raise InvalidLeadError(f"lead must be at least 1 day, got {m}")
    values = _train_values(train)
    if values.size == 0:
        raise EmptyInputError("average forecast needs an observation")
    return float(values.mean())
