"""Date-indexed daily temperature series and shared error metrics.

Temperatures are Kelvin everywhere in this package; unit conversion is
the ingest layer's job. A series stores its first calendar date plus one
value per day in a fixed 365-day year: February 29 never appears, so
index arithmetic is gap-free by construction and a whole number of years
is always a whole number of seasons.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyInputError,
    LengthMismatchError,
    OutOfRangeError,
    ValidationError,
)

# Wide physical-plausibility bounds for surface air temperature, meant to
# catch unit mistakes (Celsius or Fahrenheit leaking through), not
# climate extremes. Exclusive on both ends.
KELVIN_MIN = 170.0
KELVIN_MAX = 350.0

_ONE_DAY = dt.timedelta(days=1)


def is_leap_day(day: dt.date) -> bool:
    return day.month == 2 and day.day == 29


def next_calendar_day(day: dt.date) -> dt.date:
    """Next date in the 365-day calendar (February 29 is skipped)."""
    nxt = day + _ONE_DAY
    if is_leap_day(nxt):
        nxt += _ONE_DAY
    return nxt


@dataclass(frozen=True)
class TimeSeries:
    """Daily air-temperature observations in Kelvin.

    Dates are implied: index ``i`` holds the value for the ``i``-th day
    after ``start_date``, counting in the 365-day calendar. Instances
    are immutable (the value buffer is read-only) and safe to share.
    """

    start_date: dt.date
    values: np.ndarray
    station_id: str = ""

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("values must be one-dimensional")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        if is_leap_day(self.start_date):
            raise ValidationError(
                0, "non-consecutive", "a series cannot start on February 29"
            )

    def __len__(self) -> int:
        return int(self.values.size)

    def date_at(self, index: int) -> dt.date:
        """Calendar date of the observation at ``index``."""
        if not 0 <= index < len(self):
            raise OutOfRangeError(
                f"index {index} outside series of length {len(self)}"
            )
        day = self.start_date
        for _ in range(index):
            day = next_calendar_day(day)
        return day

    @property
    def end_date(self) -> dt.date:
        if len(self) == 0:
            raise EmptyInputError("empty series has no end date")
        return self.date_at(len(self) - 1)

    def dates(self) -> list[dt.date]:
        """Implied calendar dates, one per value, skipping February 29."""
        out: list[dt.date] = []
        day = self.start_date
        for _ in range(len(self)):
            out.append(day)
            day = next_calendar_day(day)
        return out


@dataclass(frozen=True)
class ForecastSet:
    """Predictions issued from one origin, one value per requested lead.

    ``origin_index`` is the position of the last observation used; lead
    ``m`` targets the ``m``-th day after it.
    """

    origin_index: int
    leads: tuple[int, ...]
    predictions: np.ndarray

    def __post_init__(self):
        leads = tuple(int(m) for m in self.leads)
        object.__setattr__(self, "leads", leads)
        preds = np.array(self.predictions, dtype=np.float64)
        preds.flags.writeable = False
        object.__setattr__(self, "predictions", preds)
        if not leads:
            raise ValueError("at least one lead is required")
        if any(m < 1 for m in leads):
            raise ValueError("leads must be at least 1 day")
        if any(b <= a for a, b in zip(leads, leads[1:])):
            raise ValueError("leads must be strictly increasing")
        if preds.size != len(leads):
            raise ValueError(
                f"{len(leads)} leads but {preds.size} predictions"
            )


def validate_series(series: TimeSeries) -> TimeSeries:
    """Check every series invariant, returning the series unchanged.

    Implied dates cannot have gaps (storage is start date plus offset),
    so date consecutiveness is enforced where dated observations enter
    the package: :func:`drop_leap_days` and ``ingest.clean``. Here the
    value invariants are checked, reporting the first offending index.
    """
    values = series.values
    finite = np.isfinite(values)
    ok = finite & (values > KELVIN_MIN) & (values < KELVIN_MAX)
    bad = np.flatnonzero(~ok)
    if bad.size:
        index = int(bad[0])
        rule = "range" if finite[index] else "nan"
        raise ValidationError(index, rule)
    return series


def drop_leap_days(
    dates,
    values,
    station_id: str = "",
) -> TimeSeries:
    """Build a TimeSeries from dated observations, removing February 29.

    This is the gate where explicit dates become implied ones: the input
    must advance one day at a time (a step over an already-absent
    February 29 is accepted, which makes the operation idempotent).
    Raises :class:`ValidationError` with rule ``"non-consecutive"`` at
    the first date that repeats, runs backward, or leaves a hole.
    """
    dates = list(dates)
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or len(dates) != arr.size:
        raise LengthMismatchError(
            f"{len(dates)} dates but {arr.size} values"
        )
    if not dates:
        raise EmptyInputError("no dated observations")

    kept_dates: list[dt.date] = []
    kept_values: list[float] = []
    for i, day in enumerate(dates):
        if i:
            prev = dates[i - 1]
            step = (day - prev).days
            skips_leap_day = step == 2 and is_leap_day(prev + _ONE_DAY)
            if step != 1 and not skips_leap_day:
                raise ValidationError(i, "non-consecutive")
        if not is_leap_day(day):
            kept_dates.append(day)
            kept_values.append(float(arr[i]))
    if not kept_dates:
        raise EmptyInputError("every observation fell on February 29")
    return TimeSeries(kept_dates[0], np.array(kept_values), station_id)


def rmse(predicted, actual) -> float:
    """Root mean square difference between two equal-length sequences."""
    p = np.asarray(predicted, dtype=np.float64)
    a = np.asarray(actual, dtype=np.float64)
    if p.size != a.size:
        raise LengthMismatchError(
            f"{p.size} predictions vs {a.size} actuals"
        )
    if p.size == 0:
        raise EmptyInputError("rmse of empty sequences")
    diff = p - a
    return float(np.sqrt(np.mean(diff * diff)))


def split_at_origin(
    series: TimeSeries, origin: int, max_lead: int
) -> tuple[TimeSeries, np.ndarray]:
    """Cut a series after ``origin`` observations.

    Returns the training prefix (``origin`` values) and the test slice
    holding the actuals for leads ``1..max_lead``.
    """
    n = len(series)
    if origin < 1 or max_lead < 1 or origin + max_lead > n:
        raise OutOfRangeError(
            f"origin {origin} with max lead {max_lead} does not fit a "
            f"series of length {n}"
        )
    train = TimeSeries(series.start_date, series.values[:origin], series.station_id)
    test = series.values[origin : origin + max_lead].copy()
    return train, test
