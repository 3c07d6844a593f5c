"""Exception types shared across the toolkit.

Everything raised on bad data or bad protocol parameters derives from
TempcastError, so callers (and the CLI) can separate data problems from
genuine bugs with one except clause.
"""

from __future__ import annotations

import datetime as dt


class TempcastError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(TempcastError):
    """A series invariant failed at a specific index.

    ``rule`` is one of ``"nan"``, ``"range"`` or ``"non-consecutive"``.
    """

    def __init__(self, index: int, rule: str, message: str | None = None):
        self.index = index
        self.rule = rule
        super().__init__(
            message or f"series invariant {rule!r} violated at index {index}"
        )


class LengthMismatchError(TempcastError):
    """Paired sequences have different lengths."""


class EmptyInputError(TempcastError):
    """An operation that needs at least one observation got none."""


class OutOfRangeError(TempcastError):
    """A split origin or lead does not fit inside the series."""


class TooShortError(TempcastError):
    """A training window is shorter than the smoother can initialize on."""


class NonFiniteError(TempcastError):
    """An observation or conversion input is NaN or infinite."""


class InvalidLeadError(TempcastError):
    """Forecast lead times must be at least one day."""


class InsufficientDataError(TempcastError):
    """The series cannot support the requested number of experiments."""

    def __init__(self, required: int, available: int):
        self.required = required
        self.available = available
        super().__init__(
            f"need a series of at least {required} days, have {available}"
        )


class MissingColumnError(TempcastError):
    """A required CSV header column is absent."""

    def __init__(self, column: str):
        self.column = column
        super().__init__(f"required column {column} missing from header")


class MalformedRowError(TempcastError):
    """A CSV data row could not be parsed."""

    def __init__(self, line: int, detail: str = ""):
        self.line = line
        suffix = f": {detail}" if detail else ""
        super().__init__(f"malformed row at line {line}{suffix}")


class MalformedDateError(TempcastError):
    """A CSV date field is not an ISO-8601 calendar date."""

    def __init__(self, line: int):
        self.line = line
        super().__init__(f"malformed date at line {line} (expected YYYY-MM-DD)")


class DuplicateDateError(TempcastError):
    """Two input rows claim the same calendar date."""

    def __init__(self, date: dt.date):
        self.date = date
        super().__init__(f"duplicate observation for {date.isoformat()}")


class GapTooLargeError(TempcastError):
    """An interior run of missing days exceeds the interpolation limit."""

    def __init__(self, start: dt.date, length: int):
        self.start = start
        self.length = length
        super().__init__(
            f"{length} consecutive days missing from {start.isoformat()}"
        )


class EmptyAfterFilterError(TempcastError):
    """Station/date filtering removed every usable row."""


class MultipleStationsError(TempcastError):
    """The record set mixes stations and no station filter was given."""

    def __init__(self, stations):
        self.stations = tuple(stations)
        super().__init__(
            "records span multiple stations "
            f"({', '.join(self.stations)}); pass a station filter"
        )
