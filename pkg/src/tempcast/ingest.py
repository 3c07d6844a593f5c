"""NOAA Climate Data Online daily-summary CSV ingestion.

Handles the export format as downloaded: a header row naming columns in
any order (STATION, DATE and TAVG are used, anything else ignored),
RFC-4180 quoting, empty cells for missing values. The cleaning pass
filters, converts the declared unit to Kelvin, linearly fills short
interior gaps, drops February 29, and returns a validated series.

Units are declared by the caller rather than sniffed: Celsius and
Fahrenheit overlap too much across a temperate year for guessing to be
safe.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DuplicateDateError,
    EmptyAfterFilterError,
    GapTooLargeError,
    MalformedDateError,
    MalformedRowError,
    MissingColumnError,
    MultipleStationsError,
    NonFiniteError,
)
from .series import TimeSeries, drop_leap_days, is_leap_day, validate_series

UNIT_CELSIUS = "celsius"
UNIT_FAHRENHEIT = "fahrenheit"
UNIT_TENTHS_CELSIUS = "tenths-celsius"
UNITS = (UNIT_CELSIUS, UNIT_FAHRENHEIT, UNIT_TENTHS_CELSIUS)


@dataclass(frozen=True)
class RawRecord:
    """One parsed export row; ``tavg`` is None when the cell was empty."""

    station: str
    date: dt.date
    tavg: float | None


@dataclass(frozen=True)
class RawRecordSet:
    """Parsed rows plus the unit they were exported in."""

    records: tuple[RawRecord, ...]
    unit: str

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        if self.unit not in UNITS:
            raise ValueError(f"unknown unit {self.unit!r}; expected one of {UNITS}")

    def __len__(self) -> int:
        return len(self.records)

    def to_csv(self) -> str:
        """Serialize back to the three-column export format."""
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["STATION", "DATE", "TAVG"])
        for record in self.records:
            value = "" if record.tavg is None else repr(record.tavg)
            writer.writerow([record.station, record.date.isoformat(), value])
        return out.getvalue()


@dataclass(frozen=True)
class CleanConfig:
    """Filtering and gap policy for the cleaning pass.

    Interior runs of up to ``max_gap`` missing days are filled by linear
    interpolation; longer runs abort loudly. Leading and trailing
    missing days are trimmed, never extrapolated. Date bounds are
    inclusive.
    """

    max_gap: int = 7
    start: dt.date | None = None
    end: dt.date | None = None
    station_filter: str | None = None

    def __post_init__(self):
        if self.max_gap < 0:
            raise ValueError("max_gap must be non-negative")
        if self.start is not None and self.end is not None and self.end < self.start:
            raise ValueError("date range end precedes start")


@dataclass(frozen=True)
class CleanStats:
    """Bookkeeping from one cleaning pass."""

    raw_rows: int
    kept_rows: int
    observed_days: int
    interpolated_days: int
    leap_days_dropped: int


def _parse_temperature(cell: str, line: int) -> float | None:
    cell = cell.strip()
    if not cell:
        return None
    try:
        return float(cell)
    except ValueError:
        raise MalformedRowError(line, f"not a number: {cell!r}") from None


def parse_cdo_csv(
    text: str, unit: str, tmax_tmin_fallback: bool = False
) -> RawRecordSet:
    """Parse a daily-summaries export into raw records.

    Header matching is case-insensitive and order-free; extra columns
    are ignored. Empty TAVG cells become missing values. With
    ``tmax_tmin_fallback`` enabled (for exports lacking TAVG), a missing
    TAVG is replaced by the TMAX/TMIN midpoint when both are present,
    and the TAVG column itself becomes optional.
    """
    if unit not in UNITS:
        raise ValueError(f"unknown unit {unit!r}; expected one of {UNITS}")
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MissingColumnError("STATION") from None
    columns = {name.strip().upper(): i for i, name in enumerate(header)}

    def column(name: str, required: bool) -> int | None:
        if name in columns:
            return columns[name]
        if required:
            raise MissingColumnError(name)
        return None

    i_station = column("STATION", required=True)
    i_date = column("DATE", required=True)
    i_tavg = column("TAVG", required=not tmax_tmin_fallback)
    i_tmax = column("TMAX", required=True) if tmax_tmin_fallback else None
    i_tmin = column("TMIN", required=True) if tmax_tmin_fallback else None

    records: list[RawRecord] = []
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise MalformedRowError(
                line, f"{len(row)} fields where the header has {len(header)}"
            )
        try:
            date = dt.date.fromisoformat(row[i_date].strip())
        except ValueError:
            raise MalformedDateError(line) from None
        tavg = None if i_tavg is None else _parse_temperature(row[i_tavg], line)
        if tavg is None and tmax_tmin_fallback:
            tmax = _parse_temperature(row[i_tmax], line)
            tmin = _parse_temperature(row[i_tmin], line)
            if tmax is not None and tmin is not None:
                tavg = (tmax + tmin) / 2.0
        records.append(
            RawRecord(station=row[i_station].strip(), date=date, tavg=tavg)
        )
    return RawRecordSet(records=tuple(records), unit=unit)


def to_kelvin(value: float, unit: str) -> float:
    """Convert a temperature in the declared unit to Kelvin."""
    if unit not in UNITS:
        raise ValueError(f"unknown unit {unit!r}; expected one of {UNITS}")
    if not math.isfinite(value):
        raise NonFiniteError(f"temperature is not finite: {value!r}")
    if unit == UNIT_CELSIUS:
        return value + 273.15
    if unit == UNIT_FAHRENHEIT:
        return (value - 32.0) * 5.0 / 9.0 + 273.15
    return value / 10.0 + 273.15


def clean(records: RawRecordSet, config: CleanConfig | None = None) -> TimeSeries:
    """Filter, order, convert, gap-fill, drop February 29, validate."""
    series, _ = clean_report(records, config)
    return series


def clean_report(
    records: RawRecordSet, config: CleanConfig | None = None
) -> tuple[TimeSeries, CleanStats]:
    """Like :func:`clean`, also returning the pass's bookkeeping."""
    config = config or CleanConfig()
    rows = [
        r
        for r in records.records
        if (config.station_filter is None or r.station == config.station_filter)
        and (config.start is None or r.date >= config.start)
        and (config.end is None or r.date <= config.end)
    ]
    if not rows:
        raise EmptyAfterFilterError("no rows left after station/date filtering")
    stations = sorted({r.station for r in rows})
    if len(stations) > 1:
        raise MultipleStationsError(stations)

    rows.sort(key=lambda r: r.date)
    for previous, current in zip(rows, rows[1:]):
        if current.date == previous.date:
            raise DuplicateDateError(current.date)

    observed = {r.date: r.tavg for r in rows if r.tavg is not None}
    if not observed:
        raise EmptyAfterFilterError("no usable temperature values after filtering")

    # Leading/trailing missing days are trimmed here by spanning only the
    # observed range; anything missing inside it is an interior gap.
    first = min(observed)
    last = max(observed)
    day_count = (last - first).days + 1
    dates = [first + dt.timedelta(days=i) for i in range(day_count)]
    kelvin = np.full(day_count, np.nan)
    for date, value in observed.items():
        kelvin[(date - first).days] = to_kelvin(value, records.unit)

    have = np.isfinite(kelvin)
    missing = int(day_count - have.sum())
    index = 0
    while index < day_count:
        if have[index]:
            index += 1
            continue
        run_start = index
        while not have[index]:
            index += 1
        run_length = index - run_start
        if run_length > config.max_gap:
            raise GapTooLargeError(dates[run_start], run_length)
    positions = np.arange(day_count, dtype=np.float64)
    filled = np.interp(positions, positions[have], kelvin[have])

    leap_days = sum(1 for d in dates if is_leap_day(d))
    series = drop_leap_days(dates, filled, station_id=stations[0])
    stats = CleanStats(
        raw_rows=len(records.records),
        kept_rows=len(rows),
        observed_days=len(observed),
        interpolated_days=missing,
        leap_days_dropped=leap_days,
    )
    return validate_series(series), stats
