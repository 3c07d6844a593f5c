"""Generate the bundled synthetic daily-temperature station export.

Writes a CDO-shaped daily-summaries CSV spanning 2015-01-01 through
2020-12-31 with the flavor of a continental mid-latitude station: a
two-harmonic annual cycle, a faint warming trend, autocorrelated weather
on top of day-level observation scatter, and a handful of short missing
runs (some as absent rows, some as empty TAVG cells). Values are
Celsius with one decimal, as in metric exports.

The bundled copy lives at tests/data/synthetic_station_daily.csv; rerun
this script with the default seed to regenerate it byte-for-byte.
"""

from __future__ import annotations

import argparse
import csv
import datetime as dt
import math
from pathlib import Path

import numpy as np

STATION = "USW00010001"
STATION_NAME = "LAKESHORE REGIONAL AIRPORT, XX US"
START = dt.date(2015, 1, 1)
END = dt.date(2020, 12, 31)

MEAN_C = 6.6
ANNUAL_AMPLITUDE = 19.0
SECOND_HARMONIC = 1.5
WARMEST_DAY = 198  # mid-July
TREND_PER_DAY = 0.0002
# Weather anomalies on two timescales: week-scale regimes plus storm-scale
# swings, with uncorrelated day-level scatter on top.
SLOW_STD = 3.912
SLOW_RHO = 0.65
FAST_STD = 0.0
FAST_RHO = 0.3
SCATTER_STD = 3.05


def _ar1(std: float, rho: float, n: int, rng: np.random.Generator) -> np.ndarray:
    out = np.empty(n)
    out[0] = rng.normal(0.0, std)
    innovation_std = std * math.sqrt(1.0 - rho * rho)
    for i in range(1, n):
        out[i] = rho * out[i - 1] + rng.normal(0.0, innovation_std)
    return out


def daily_celsius(n_days: int, rng: np.random.Generator) -> np.ndarray:
    t = np.arange(n_days, dtype=np.float64)
    phase = 2.0 * np.pi * (t - WARMEST_DAY) / 365.25
    climate = (
        MEAN_C
        + ANNUAL_AMPLITUDE * np.cos(phase)
        + SECOND_HARMONIC * np.cos(2.0 * phase + 0.9)
        + TREND_PER_DAY * t
    )
    weather = _ar1(SLOW_STD, SLOW_RHO, n_days, rng) + _ar1(
        FAST_STD, FAST_RHO, n_days, rng
    )
    scatter = rng.normal(0.0, SCATTER_STD, n_days)
    return np.round(climate + weather + scatter, 1)


def missing_patterns(n_days: int, rng: np.random.Generator):
    """Absent-row runs and empty-cell days, all interior and short."""
    absent: set[int] = set()
    for run_length in (3, 5):
        start = int(rng.integers(60, n_days - 60 - run_length))
        absent.update(range(start, start + run_length))
    empties: set[int] = set()
    candidates = rng.choice(np.arange(60, n_days - 60), size=24, replace=False)
    for index in (int(i) for i in candidates):
        near_absent = any(index + d in absent for d in range(-2, 3))
        if not near_absent:
            (absent if len(absent) < 13 else empties).add(index)
        if len(empties) >= 4:
            break
    runs = sorted(absent | empties)
    longest = 1
    streak = 1
    for a, b in zip(runs, runs[1:]):
        streak = streak + 1 if b == a + 1 else 1
        longest = max(longest, streak)
    if longest > 7:
        raise AssertionError(f"missing run of {longest} days exceeds the gap limit")
    return absent, empties


def write_csv(path: Path, seed: int) -> None:
    rng = np.random.default_rng(seed)
    n_days = (END - START).days + 1
    values = daily_celsius(n_days, rng)
    absent, empties = missing_patterns(n_days, rng)

    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["STATION", "NAME", "DATE", "TAVG"])
        for i in range(n_days):
            if i in absent:
                continue
            day = (START + dt.timedelta(days=i)).isoformat()
            cell = "" if i in empties else f"{values[i]:.1f}"
            writer.writerow([STATION, STATION_NAME, day, cell])
    print(f"wrote {path} ({n_days - len(absent)} rows, seed {seed})")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=25)
    parser.add_argument(
        "--out",
        type=Path,
        default=Path(__file__).resolve().parent.parent
        / "tests"
        / "data"
        / "synthetic_station_daily.csv",
    )
    args = parser.parse_args()
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_csv(args.out, args.seed)


if __name__ == "__main__":
    main()
