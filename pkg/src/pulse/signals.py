"""Loaders and transforms for the non-news signals.

Covers cumulative case/death series (wide CSV, one row per region), daily
travel-distance reduction scores with letter grading, community mobility
percent changes (six place categories), demographic indicator tables, and
search-interest normalization to the 0-100 scale.
"""

from __future__ import annotations

import csv
import math
import statistics
import warnings
from dataclasses import dataclass, field
from datetime import date
from typing import Optional, Sequence

from .errors import (
    DuplicateDate,
    EmptyInput,
    InvalidSeries,
    MissingPopulation,
    MissingWeekday,
    NegativeShare,
    NonFinite,
    NonMonotoneWarning,
    PercentOutOfRange,
    ShareSumError,
    UnknownCategory,
    WrongKind,
)

CASES_CUMULATIVE = "cases_cumulative"
DEATHS_CUMULATIVE = "deaths_cumulative"
CASES_NEW = "cases_new"
DEATHS_NEW = "deaths_new"
MOBILITY_CHANGE = "mobility_change"
DISTANCING_REDUCTION = "distancing_reduction"
TRENDS_INTEREST = "trends_interest"

SIGNAL_KINDS = frozenset({
    CASES_CUMULATIVE, DEATHS_CUMULATIVE, CASES_NEW, DEATHS_NEW,
    MOBILITY_CHANGE, DISTANCING_REDUCTION, TRENDS_INTEREST,
})

_CUMULATIVE_KINDS = frozenset({CASES_CUMULATIVE, DEATHS_CUMULATIVE})
_NEW_OF = {CASES_CUMULATIVE: CASES_NEW, DEATHS_CUMULATIVE: DEATHS_NEW}

MOBILITY_CATEGORIES = (
    "retail_and_recreation",
    "grocery_and_pharmacy",
    "parks",
    "transit_stations",
    "workplaces",
    "residential",
)


@dataclass(slots=True)
class SignalSeries:
    """Dated numeric series for one (kind, region[, category])."""

    kind: str
    region: str
    points: list[tuple[date, float]]
    category: Optional[str] = None

    def __post_init__(self):
        if self.kind not in SIGNAL_KINDS:
            raise InvalidSeries(f"unknown signal kind {self.kind!r}")
        last = None
        for d, v in self.points:
            if last is not None and d <= last:
                raise InvalidSeries(f"dates not strictly increasing at {d}")
            last = d
            if self.kind in _CUMULATIVE_KINDS and v < 0:
                raise InvalidSeries(f"negative cumulative value {v} on {d}")
            if self.kind == TRENDS_INTEREST and not (0 <= v <= 100):
                raise InvalidSeries(f"interest {v} outside [0, 100] on {d}")

    def dates(self) -> list[date]:
        return [d for d, _ in self.points]

    def values(self) -> list[float]:
        return [v for _, v in self.points]


@dataclass(slots=True)
class DistancingGrade:
    """One state-day distance-reduction score with its letter grade."""

    state: str
    date: date
    reduction: float
    grade: str = field(init=False)

    def __post_init__(self):
        self.grade = grade_distancing(self.reduction)


def load_case_series(path, kind: str) -> list[SignalSeries]:
    """Load a wide cumulative CSV: header 'region,<date>,...', one row per region.

    Decreasing cumulative values are loaded verbatim but reported through a
    NonMonotoneWarning; upstream corrections do happen.
    """
    if kind not in _CUMULATIVE_KINDS:
        raise WrongKind(f"kind must be cumulative, got {kind!r}")
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    rows = [r for r in rows if r]
    if len(rows) < 2 or len(rows[0]) < 2:
        raise EmptyInput(f"{path} has no data")
    header = rows[0]
    dates = [date.fromisoformat(c.strip()) for c in header[1:]]
    order = sorted(range(len(dates)), key=lambda i: dates[i])
    if len({dates[i] for i in order}) != len(dates):
        raise DuplicateDate(f"{path} repeats a date column")

    out = []
    for row in rows[1:]:
        region = row[0].strip()
        points = []
        for i in order:
            cell = row[1 + i].strip() if 1 + i < len(row) else ""
            if not cell:
                continue
            points.append((dates[i], float(cell)))
        for (d_prev, v_prev), (d_cur, v_cur) in zip(points, points[1:]):
            if v_cur < v_prev:
                warnings.warn(
                    f"{kind} for {region} decreases {v_prev} -> {v_cur} on {d_cur}",
                    NonMonotoneWarning,
                    stacklevel=2,
                )
        out.append(SignalSeries(kind, region, points))
    return out


def new_daily(series: SignalSeries) -> tuple[SignalSeries, int]:
    """Difference a cumulative series into daily new values.

    The first day's new value is its cumulative value; negative differences
    clamp to 0 and are counted in the returned clamp tally.
    """
    if series.kind not in _CUMULATIVE_KINDS:
        raise WrongKind(f"new_daily needs a cumulative series, got {series.kind!r}")
    clamps = 0
    points: list[tuple[date, float]] = []
    prev = None
    for d, v in series.points:
        if prev is None:
            delta = v
        else:
            delta = v - prev
            if delta < 0:
                delta = 0
                clamps += 1
        points.append((d, delta))
        prev = v
    return SignalSeries(_NEW_OF[series.kind], series.region, points), clamps


def grade_distancing(reduction: float) -> str:
    """Letter grade for a signed reduction fraction (-0.70 = 70% decrease).

    Bands on the decrease d = -reduction, lower bound inclusive:
    A: d >= 0.70; B: 0.55 <= d < 0.70; C: 0.40 <= d < 0.55;
    D: 0.25 <= d < 0.40; F: d < 0.25 (including any increase).
    """
    if not math.isfinite(reduction):
        raise NonFinite(f"reduction {reduction!r} is not finite")
    d = -reduction
    if d >= 0.70:
        return "A"
    if d >= 0.55:
        return "B"
    if d >= 0.40:
        return "C"
    if d >= 0.25:
        return "D"
    return "F"


def compute_weekday_baseline(
    raw: SignalSeries, window: tuple[date, date]
) -> dict[int, float]:
    """Median value per weekday (0=Monday) over the inclusive window."""
    start, end = window
    by_weekday: dict[int, list[float]] = {i: [] for i in range(7)}
    for d, v in raw.points:
        if start <= d <= end:
            by_weekday[d.weekday()].append(v)
    missing = [i for i, vals in by_weekday.items() if not vals]
    if missing:
        raise MissingWeekday(f"no observation for weekday(s) {missing} in {start}..{end}")
    return {i: float(statistics.median(vals)) for i, vals in by_weekday.items()}


def load_mobility(path) -> list[SignalSeries]:
    """Load long mobility CSV: region,date,<six category columns>.

    Blank cells emit no point; a repeated (region, date) row is an error.
    """
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None:
            raise EmptyInput(f"{path} has no header")
        fields = [c.strip() for c in reader.fieldnames]
        extra = set(fields) - {"region", "date", *MOBILITY_CATEGORIES}
        if extra:
            raise UnknownCategory(f"unexpected column(s) {sorted(extra)}")
        if "region" not in fields or "date" not in fields:
            raise EmptyInput(f"{path} needs region and date columns")
        categories = [c for c in MOBILITY_CATEGORIES if c in fields]

        seen: set[tuple[str, date]] = set()
        collected: dict[tuple[str, str], list[tuple[date, float]]] = {}
        for row in reader:
            region = row["region"].strip()
            d = date.fromisoformat(row["date"].strip())
            if (region, d) in seen:
                raise DuplicateDate(f"duplicate row for ({region}, {d})")
            seen.add((region, d))
            for cat in categories:
                cell = (row.get(cat) or "").strip()
                if not cell:
                    continue
                collected.setdefault((region, cat), []).append((d, float(cell)))

    out = []
    for (region, cat), points in collected.items():
        points.sort(key=lambda p: p[0])
        out.append(SignalSeries(MOBILITY_CHANGE, region, points, category=cat))
    return out


def load_distancing(path) -> list[SignalSeries]:
    """Load long distancing CSV: state,date,reduction (signed fraction)."""
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or {"state", "date", "reduction"} - set(reader.fieldnames):
            raise EmptyInput(f"{path} needs state,date,reduction columns")
        seen: set[tuple[str, date]] = set()
        collected: dict[str, list[tuple[date, float]]] = {}
        for row in reader:
            state = row["state"].strip()
            d = date.fromisoformat(row["date"].strip())
            if (state, d) in seen:
                raise DuplicateDate(f"duplicate row for ({state}, {d})")
            seen.add((state, d))
            reduction = float(row["reduction"])
            if not math.isfinite(reduction):
                raise NonFinite(f"reduction for ({state}, {d}) is not finite")
            collected.setdefault(state, []).append((d, reduction))
    out = []
    for state, points in collected.items():
        points.sort(key=lambda p: p[0])
        out.append(SignalSeries(DISTANCING_REDUCTION, state, points))
    return out


def grade_series(series: SignalSeries) -> list[DistancingGrade]:
    if series.kind != DISTANCING_REDUCTION:
        raise WrongKind(f"grading needs {DISTANCING_REDUCTION}, got {series.kind!r}")
    return [DistancingGrade(series.region, d, v) for d, v in series.points]


# Demographic share groups are written "group:member" (ethnicity:white, ...);
# members of each (state, group) must sum to 100 within this tolerance.
SHARE_GROUP_TOLERANCE = 0.5


def load_demographics(path) -> dict[tuple[str, str], float]:
    """Load long demographic CSV: state,indicator,value,unit.

    Rows with unit 'count' convert to percent of the state's population row;
    unit 'percent' passes through. Population rows are consumed for the
    conversion and not emitted.
    """
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        required = {"state", "indicator", "value", "unit"}
        if reader.fieldnames is None or required - set(reader.fieldnames):
            raise EmptyInput(f"{path} needs state,indicator,value,unit columns")
        rows = [(r["state"].strip(), r["indicator"].strip(), float(r["value"]),
                 r["unit"].strip().lower()) for r in reader]
    if not rows:
        raise EmptyInput(f"{path} has no data rows")

    population: dict[str, float] = {}
    for state, indicator, value, unit in rows:
        if indicator == "population":
            population[state] = value

    table: dict[tuple[str, str], float] = {}
    for state, indicator, value, unit in rows:
        if indicator == "population":
            continue
        if unit == "count":
            pop = population.get(state)
            if not pop:
                raise MissingPopulation(f"no population row for {state!r}")
            pct = 100.0 * value / pop
        elif unit == "percent":
            pct = value
        else:
            raise UnknownCategory(f"unit {unit!r} (expected count or percent)")
        if not (0.0 <= pct <= 100.0):
            raise PercentOutOfRange(f"({state}, {indicator}) -> {pct}")
        table[(state, indicator)] = pct

    _check_share_groups(table)
    return table


def _check_share_groups(table: dict[tuple[str, str], float]) -> None:
    sums: dict[tuple[str, str], float] = {}
    for (state, indicator), pct in table.items():
        if ":" in indicator:
            group = indicator.split(":", 1)[0]
            sums[(state, group)] = sums.get((state, group), 0.0) + pct
    for (state, group), total in sums.items():
        if abs(total - 100.0) > SHARE_GROUP_TOLERANCE:
            raise ShareSumError(f"({state}, {group}) shares sum to {total}")


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def normalize_interest(
    shares: Sequence[tuple[date, float]], *, keyword: str, region: str
) -> SignalSeries:
    """Scale search shares so the window peak is 100 (integers, half-up rounding).

    All-zero input maps every point to 0, the no-data sentinel.
    """
    for d, s in shares:
        if s < 0:
            raise NegativeShare(f"share {s} on {d}")
    peak = max((s for _, s in shares), default=0.0)
    if peak == 0.0:
        points = [(d, 0.0) for d, _ in shares]
    else:
        points = [(d, float(_round_half_up(100.0 * s / peak))) for d, s in shares]
    return SignalSeries(TRENDS_INTEREST, region, points, category=keyword)


def load_trends(path) -> list[SignalSeries]:
    """Load long trends CSV: keyword,region,date,share -> one series per pair."""
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        required = {"keyword", "region", "date", "share"}
        if reader.fieldnames is None or required - set(reader.fieldnames):
            raise EmptyInput(f"{path} needs keyword,region,date,share columns")
        collected: dict[tuple[str, str], list[tuple[date, float]]] = {}
        seen: set[tuple[str, str, date]] = set()
        for row in reader:
            keyword = row["keyword"].strip()
            region = row["region"].strip()
            d = date.fromisoformat(row["date"].strip())
            if (keyword, region, d) in seen:
                raise DuplicateDate(f"duplicate row for ({keyword}, {region}, {d})")
            seen.add((keyword, region, d))
            collected.setdefault((keyword, region), []).append((d, float(row["share"])))
    out = []
    for (keyword, region), points in collected.items():
        points.sort(key=lambda p: p[0])
        out.append(normalize_interest(points, keyword=keyword, region=region))
    return out
