"""Rolling-origin benchmark harness.

Each experiment cuts the series at a sampled origin, trains every
requested model on the trailing fixed-length window before it, forecasts
each requested lead, and records the signed error (forecast minus
actual). Per-(model, lead) errors are pooled across experiments into a
single RMSE, matching a one-forecast-per-experiment protocol.

Experiments are independent of one another; the report is assembled in
origin order, so running them in any order (or in parallel) yields the
same result.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientDataError, OutOfRangeError
from .models import (
    average_forecast,
    hw_fit,
    hw_forecast,
    persistence_forecast,
)
from .series import TimeSeries, split_at_origin, validate_series
from .tuning import FitResult, GridSpec, grid_search

# "proposed" is the tuned seasonal smoother, kept under the name it
# carries in comparison tables; the other two are its baselines.
MODEL_NAMES = ("proposed", "persistence", "average")


@dataclass(frozen=True)
class BacktestConfig:
    """Rolling-origin protocol parameters.

    ``train_length`` is the exact number of trailing observations each
    experiment trains on (default five 365-day years); origins are drawn
    without replacement from every index that leaves a full window
    behind it and all leads ahead of it.
    """

    train_length: int = 1825
    leads: tuple[int, ...] = (1, 2, 3, 4)
    n_experiments: int = 50
    seed: int = 0
    models: tuple[str, ...] = MODEL_NAMES
    grid: GridSpec = field(default_factory=GridSpec.default)
    season_length: int = 365

    def __post_init__(self):
        object.__setattr__(self, "leads", tuple(int(m) for m in self.leads))
        object.__setattr__(self, "models", tuple(self.models))
        if self.season_length < 2:
            raise ValueError("season_length must be at least 2")
        minimum_train = 2 * self.season_length + 1
        if self.train_length < minimum_train:
            raise ValueError(
                f"train_length must be at least {minimum_train} "
                f"(two seasons plus one), got {self.train_length}"
            )
        if not self.leads or any(m < 1 for m in self.leads):
            raise ValueError("leads must be a nonempty list of days >= 1")
        if any(b <= a for a, b in zip(self.leads, self.leads[1:])):
            raise ValueError("leads must be strictly increasing")
        if self.n_experiments < 1:
            raise ValueError("n_experiments must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if not self.models:
            raise ValueError("at least one model is required")
        unknown = [m for m in self.models if m not in MODEL_NAMES]
        if unknown:
            raise ValueError(
                f"unknown models {unknown}; choose from {MODEL_NAMES}"
            )
        if len(set(self.models)) != len(self.models):
            raise ValueError("models must not repeat")


@dataclass(frozen=True)
class ExperimentResult:
    """Signed forecast errors for one origin, keyed model then lead."""

    origin: int
    errors: dict[str, dict[int, float]]
    fit: FitResult | None = None


@dataclass(frozen=True)
class BacktestReport:
    """Pooled benchmark results.

    ``errors[model][lead]`` holds one signed error per experiment, in
    origin order; ``rmse[model][lead]`` pools them. ``fits`` carries the
    tuned coefficients per experiment when the smoother ran.
    """

    config: BacktestConfig
    origins: tuple[int, ...]
    errors: dict[str, dict[int, np.ndarray]]
    rmse: dict[str, dict[int, float]]
    fits: tuple[FitResult, ...] | None = None


def select_origins(series_length: int, config: BacktestConfig) -> np.ndarray:
    """Sample distinct forecast origins, sorted ascending.

    Uniform without replacement over the feasible range, from a
    generator seeded by ``config.seed``; deterministic for fixed inputs.
    """
    lo = config.train_length
    hi = series_length - max(config.leads)
    available = hi - lo + 1
    if available < config.n_experiments:
        required = config.train_length + max(config.leads) + config.n_experiments - 1
        raise InsufficientDataError(required=required, available=series_length)
    rng = np.random.default_rng(config.seed)
    offsets = rng.choice(available, size=config.n_experiments, replace=False)
    origins = np.sort(offsets.astype(np.int64)) + lo
    return origins


def _training_window(series: TimeSeries, origin: int, config: BacktestConfig) -> TimeSeries:
    start = origin - config.train_length
    return TimeSeries(
        series.date_at(start),
        series.values[start:origin],
        series.station_id,
    )


def run_experiment(
    series: TimeSeries, origin: int, config: BacktestConfig
) -> ExperimentResult:
    """Forecast every requested (model, lead) pair from one origin.

    Models see only the trailing ``train_length`` observations before
    the origin. The smoother is re-tuned from scratch here, one fit
    shared by all leads of this experiment.
    """
    max_lead = max(config.leads)
    prefix, test = split_at_origin(series, origin, max_lead)
    if len(prefix) < config.train_length:
        raise OutOfRangeError(
            f"origin {origin} leaves only {len(prefix)} observations for a "
            f"{config.train_length}-day training window"
        )
    window = _training_window(series, origin, config)

    errors: dict[str, dict[int, float]] = {}
    fit = None
    if "proposed" in config.models:
        fit = grid_search(window, config.grid, config.season_length)
        state = hw_fit(window, fit.params)
        errors["proposed"] = {
            m: hw_forecast(state, m, fit.params) - float(test[m - 1])
            for m in config.leads
        }
    if "persistence" in config.models:
        errors["persistence"] = {
            m: persistence_forecast(window, m) - float(test[m - 1])
            for m in config.leads
        }
    if "average" in config.models:
        errors["average"] = {
            m: average_forecast(window, m) - float(test[m - 1])
            for m in config.leads
        }
    return ExperimentResult(origin=int(origin), errors=errors, fit=fit)


def collect_report(
    config: BacktestConfig, results: list[ExperimentResult]
) -> BacktestReport:
    """Pool per-experiment errors into a report, insensitive to the
    order the experiments were run in."""
    ordered = sorted(results, key=lambda r: r.origin)
    origins = tuple(r.origin for r in ordered)
    errors: dict[str, dict[int, np.ndarray]] = {}
    rmse: dict[str, dict[int, float]] = {}
    for model in config.models:
        errors[model] = {}
        rmse[model] = {}
        for lead in config.leads:
            cell = np.array([r.errors[model][lead] for r in ordered])
            cell.flags.writeable = False
            errors[model][lead] = cell
            rmse[model][lead] = float(np.sqrt(np.mean(cell * cell)))
    fits = None
    if "proposed" in config.models:
        fits = tuple(r.fit for r in ordered)
    return BacktestReport(
        config=config, origins=origins, errors=errors, rmse=rmse, fits=fits
    )


def run_backtest(series: TimeSeries, config: BacktestConfig) -> BacktestReport:
    """Run the full protocol: validate, sample origins, run every
    experiment, pool. Deterministic given (series, config)."""
    validate_series(series)
    origins = select_origins(len(series), config)
    results = [run_experiment(series, int(o), config) for o in origins]
    return collect_report(config, results)
