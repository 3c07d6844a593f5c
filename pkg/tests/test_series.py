import datetime as dt
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tempcast import (
    TimeSeries,
    ForecastSet,
    drop_leap_days,
    rmse,
    split_at_origin,
    validate_series,
)
from tempcast.errors import (
    EmptyInputError,
    LengthMismatchError,
    OutOfRangeError,
    ValidationError,
)

JAN1 = dt.date(2015, 1, 1)


def daily_dates(start, n):
    return [start + dt.timedelta(days=i) for i in range(n)]


class TestValidateSeries:
    def test_clean_series_passes_unchanged(self, make_series):
        series = make_series([270.0, 271.0, 272.5])
        assert validate_series(series) is series

    def test_range_violation_reports_index_and_rule(self, make_series):
        series = make_series([280.0, 400.0, 281.0])
        with pytest.raises(ValidationError) as excinfo:
            validate_series(series)
        assert excinfo.value.index == 1
        assert excinfo.value.rule == "range"

    def test_nan_reports_nan_rule(self, make_series):
        series = make_series([280.0, 281.0, float("nan")])
        with pytest.raises(ValidationError) as excinfo:
            validate_series(series)
        assert excinfo.value.index == 2
        assert excinfo.value.rule == "nan"

    def test_bounds_are_exclusive(self, make_series):
        for bad in (170.0, 350.0):
            with pytest.raises(ValidationError) as excinfo:
                validate_series(make_series([280.0, bad]))
            assert excinfo.value.rule == "range"
        validate_series(make_series([170.001, 349.999]))

    def test_first_offending_index_wins_across_rules(self, make_series):
        series = make_series([280.0, float("nan"), 281.0, 500.0])
        with pytest.raises(ValidationError) as excinfo:
            validate_series(series)
        assert excinfo.value.index == 1
        assert excinfo.value.rule == "nan"


class TestTimeSeries:
    def test_values_are_read_only(self, make_series):
        series = make_series([280.0, 281.0])
        with pytest.raises(ValueError):
            series.values[0] = 0.0

    def test_dates_skip_leap_day(self):
        series = TimeSeries(dt.date(2016, 2, 28), np.array([280.0, 281.0, 282.0]))
        assert series.dates() == [
            dt.date(2016, 2, 28),
            dt.date(2016, 3, 1),
            dt.date(2016, 3, 2),
        ]
        assert series.end_date == dt.date(2016, 3, 2)

    def test_cannot_start_on_leap_day(self):
        with pytest.raises(ValidationError):
            TimeSeries(dt.date(2016, 2, 29), np.array([280.0]))

    def test_date_at_range_checked(self, make_series):
        series = make_series([280.0, 281.0])
        assert series.date_at(1) == dt.date(2015, 1, 2)
        with pytest.raises(OutOfRangeError):
            series.date_at(2)


class TestDropLeapDays:
    def test_removes_feb_29(self):
        dates = daily_dates(dt.date(2016, 2, 28), 3)  # 28, 29, Mar 1
        series = drop_leap_days(dates, [280.0, 285.0, 281.0], "S")
        assert len(series) == 2
        assert list(series.values) == [280.0, 281.0]
        assert series.start_date == dt.date(2016, 2, 28)

    def test_plain_year_unchanged(self):
        dates = daily_dates(dt.date(2015, 1, 1), 365)
        values = np.linspace(260.0, 290.0, 365)
        series = drop_leap_days(dates, values, "S")
        assert len(series) == 365
        np.testing.assert_array_equal(series.values, values)

    def test_full_span_2015_2020_drops_two_days(self):
        # brute-force count of Feb 29 occurrences over the span
        dates = []
        day = dt.date(2015, 1, 1)
        while day <= dt.date(2020, 12, 31):
            dates.append(day)
            day += dt.timedelta(days=1)
        assert len(dates) == 2192
        assert sum(1 for d in dates if d.month == 2 and d.day == 29) == 2
        series = drop_leap_days(dates, np.full(len(dates), 280.0), "S")
        assert len(series) == 2190

    def test_duplicate_date_reports_non_consecutive_at_index(self):
        dates = daily_dates(JAN1, 4)
        dates[2] = dates[1]
        with pytest.raises(ValidationError) as excinfo:
            drop_leap_days(dates, [280.0] * 4, "S")
        assert excinfo.value.index == 2
        assert excinfo.value.rule == "non-consecutive"

    def test_gap_reports_non_consecutive(self):
        dates = daily_dates(JAN1, 3)
        dates[2] = dates[2] + dt.timedelta(days=5)
        with pytest.raises(ValidationError) as excinfo:
            drop_leap_days(dates, [280.0] * 3, "S")
        assert excinfo.value.index == 2

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            drop_leap_days(daily_dates(JAN1, 3), [280.0, 281.0], "S")

    @given(
        start_offset=st.integers(min_value=0, max_value=1500),
        n=st.integers(min_value=1, max_value=500),
    )
    @settings(max_examples=40, deadline=None)
    def test_idempotent(self, start_offset, n):
        start = dt.date(2015, 6, 1) + dt.timedelta(days=start_offset)
        dates = daily_dates(start, n)
        values = 280.0 + np.arange(n, dtype=float)
        first = drop_leap_days(dates, values, "S")
        again = drop_leap_days(first.dates(), first.values, "S")
        assert again.start_date == first.start_date
        np.testing.assert_array_equal(again.values, first.values)


class TestRmse:
    def test_identical_sequences_give_zero(self):
        assert rmse([280.0, 285.0], [280.0, 285.0]) == 0.0

    def test_hand_computed_example(self):
        # sqrt((3^2 + 4^2) / 2) worked out by hand
        assert rmse([0.0, 0.0], [3.0, 4.0]) == pytest.approx(
            math.sqrt(12.5), abs=1e-12
        )

    def test_single_pair_is_absolute_difference(self):
        assert rmse([281.5], [280.0]) == pytest.approx(1.5, abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            rmse([1.0, 2.0], [1.0])

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            rmse([], [])

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_symmetric_and_shift_invariant(self, data):
        n = data.draw(st.integers(min_value=1, max_value=40))
        finite = st.floats(min_value=170.0, max_value=350.0)
        xs = np.array(data.draw(st.lists(finite, min_size=n, max_size=n)))
        ys = np.array(data.draw(st.lists(finite, min_size=n, max_size=n)))
        shift = data.draw(st.floats(min_value=-50.0, max_value=50.0))
        assert rmse(xs, ys) == rmse(ys, xs)
        assert rmse(xs + shift, ys + shift) == pytest.approx(
            rmse(xs, ys), abs=1e-9
        )

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_matches_explicit_loop(self, data):
        n = data.draw(st.integers(min_value=1, max_value=50))
        finite = st.floats(min_value=-100.0, max_value=100.0)
        xs = data.draw(st.lists(finite, min_size=n, max_size=n))
        ys = data.draw(st.lists(finite, min_size=n, max_size=n))
        total = 0.0
        for x, y in zip(xs, ys):
            total += (x - y) ** 2
        expected = math.sqrt(total / n)
        assert rmse(xs, ys) == pytest.approx(expected, rel=1e-12, abs=1e-15)


class TestSplitAtOrigin:
    def test_basic_split(self, make_series):
        series = make_series(np.arange(280.0, 290.0))
        train, test = split_at_origin(series, 8, 2)
        assert len(train) == 8
        np.testing.assert_array_equal(test, [288.0, 289.0])

    def test_rejects_overrun(self, make_series):
        series = make_series(np.arange(280.0, 290.0))
        with pytest.raises(OutOfRangeError):
            split_at_origin(series, 9, 2)

    def test_rejects_zero_origin_and_lead(self, make_series):
        series = make_series(np.arange(280.0, 290.0))
        with pytest.raises(OutOfRangeError):
            split_at_origin(series, 0, 1)
        with pytest.raises(OutOfRangeError):
            split_at_origin(series, 2, 0)

    def test_five_year_window_arithmetic(self, make_series):
        series = make_series(np.full(2190, 280.0))
        train, test = split_at_origin(series, 1825, 4)
        assert len(train) == 1825
        assert len(test) == 4

    @given(
        n=st.integers(min_value=2, max_value=60),
        data=st.data(),
    )
    @settings(max_examples=60, deadline=None)
    def test_concat_reproduces_slice(self, n, data):
        origin = data.draw(st.integers(min_value=1, max_value=n - 1))
        max_lead = data.draw(st.integers(min_value=1, max_value=n - origin))
        values = 280.0 + np.arange(n, dtype=float)
        series = TimeSeries(JAN1, values, "T")
        train, test = split_at_origin(series, origin, max_lead)
        joined = np.concatenate([train.values, test])
        np.testing.assert_array_equal(joined, values[: origin + max_lead])


class TestForecastSet:
    def test_well_formed(self):
        fs = ForecastSet(origin_index=10, leads=(1, 2, 4), predictions=[280.0, 281.0, 282.0])
        assert fs.leads == (1, 2, 4)
        assert fs.predictions.size == 3

    def test_rejects_mismatch_and_bad_leads(self):
        with pytest.raises(ValueError):
            ForecastSet(10, (1, 2), [280.0])
        with pytest.raises(ValueError):
            ForecastSet(10, (2, 1), [280.0, 281.0])
        with pytest.raises(ValueError):
            ForecastSet(10, (0, 1), [280.0, 281.0])
        with pytest.raises(ValueError):
            ForecastSet(10, (), [])
