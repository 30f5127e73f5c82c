"""Derived metrics over the article corpus.

Daily and ISO-week article counts, per-bias-category series, normalized
distributions, Pearson correlation, category shares of the whole corpus,
and representation ratios against a baseline share table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import date, timedelta
from typing import Iterable, Mapping, Optional, Sequence

from . import bias
from .errors import (
    EmptyCorpus,
    LengthMismatch,
    WrongGranularity,
    ZeroTotal,
    ZeroVariance,
)

DAILY = "daily"
WEEKLY = "weekly"


@dataclass(slots=True)
class CountSeries:
    """Ordered (period start, count) points at daily or weekly granularity."""

    granularity: str
    label: str
    points: list[tuple[date, int]]
    partial: frozenset = field(default_factory=frozenset)  # week starts not fully covered

    def dates(self) -> list[date]:
        return [d for d, _ in self.points]

    def values(self) -> list[int]:
        return [v for _, v in self.points]

    def total(self) -> int:
        return sum(v for _, v in self.points)


@dataclass(slots=True)
class ShareTable:
    """Share of all articles per bias category; includes the unrated share."""

    shares: dict[str, float]

    def unrated(self) -> float:
        return self.shares.get(bias.UNRATED, 0.0)


@dataclass(slots=True)
class RatioTable:
    """Corpus share over baseline share per category; None where baseline is 0."""

    ratios: dict[str, Optional[float]]


def week_start(d: date) -> date:
    """Monday of the ISO week containing d."""
    return d - timedelta(days=d.weekday())


def date_range(start: date, end: date) -> Iterable[date]:
    d = start
    while d <= end:
        yield d
        d += timedelta(days=1)


def daily_counts(articles, span: tuple[date, date], label: str = "articles") -> CountSeries:
    """One zero-filled point per calendar day in the inclusive span."""
    start, end = span
    if start > end:
        raise ValueError(f"empty range {start}..{end}")
    counts = {d: 0 for d in date_range(start, end)}
    for a in articles:
        if start <= a.record_date <= end:
            counts[a.record_date] += 1
    return CountSeries(DAILY, label, sorted(counts.items()))


def weekly_counts(daily: CountSeries) -> CountSeries:
    """Sum dailies into Monday-start ISO weeks; boundary weeks are flagged partial."""
    if daily.granularity != DAILY:
        raise WrongGranularity(f"expected daily series, got {daily.granularity!r}")
    sums: dict[date, int] = {}
    covered: dict[date, int] = {}
    for d, v in daily.points:
        w = week_start(d)
        sums[w] = sums.get(w, 0) + v
        covered[w] = covered.get(w, 0) + 1
    partial = frozenset(w for w, n in covered.items() if n < 7)
    return CountSeries(WEEKLY, daily.label, sorted(sums.items()), partial=partial)


def counts_by_bias(articles, registry, span: tuple[date, date]) -> dict[str, CountSeries]:
    """Zero-filled daily series per bias label; every label always present."""
    start, end = span
    per_label: dict[str, dict[date, int]] = {
        label: {d: 0 for d in date_range(start, end)} for label in bias.ALL_LABELS
    }
    for a in articles:
        if start <= a.record_date <= end:
            label = bias.resolve_bias(registry, a.publisher)
            per_label[label][a.record_date] += 1
    return {
        label: CountSeries(DAILY, label, sorted(days.items()))
        for label, days in per_label.items()
    }


def normalize_series(series: CountSeries) -> list[tuple[date, float]]:
    """Divide each point by the series total; proportions sum to 1."""
    total = series.total()
    if total == 0:
        raise ZeroTotal(f"series {series.label!r} sums to zero")
    return [(d, v / total) for d, v in series.points]


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Product-moment correlation via the centered two-pass formula."""
    if len(x) != len(y):
        raise LengthMismatch(f"{len(x)} vs {len(y)}")
    n = len(x)
    if n < 2:
        raise LengthMismatch("need at least 2 points")
    mx = math.fsum(x) / n
    my = math.fsum(y) / n
    sxy = math.fsum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = math.fsum((a - mx) ** 2 for a in x)
    syy = math.fsum((b - my) ** 2 for b in y)
    if sxx == 0.0 or syy == 0.0:
        raise ZeroVariance("constant input series")
    den = math.sqrt(sxx * syy)
    if den == 0.0:  # product underflowed; split the roots instead
        den = math.sqrt(sxx) * math.sqrt(syy)
    if den == 0.0:
        raise ZeroVariance("variance below float precision")
    r = sxy / den
    return max(-1.0, min(1.0, r))


def category_share(articles, registry) -> ShareTable:
    """Share of the whole corpus per label, unrated included in the denominator."""
    counts = {label: 0 for label in bias.ALL_LABELS}
    total = 0
    for a in articles:
        counts[bias.resolve_bias(registry, a.publisher)] += 1
        total += 1
    if total == 0:
        raise EmptyCorpus("no articles")
    return ShareTable({label: n / total for label, n in counts.items()})


def representation_ratio(
    covid_shares: ShareTable, baseline_shares: ShareTable
) -> RatioTable:
    """Per-category covid share over baseline share; None where baseline is 0."""
    ratios: dict[str, Optional[float]] = {}
    for label in bias.ALL_LABELS:
        cs = covid_shares.shares.get(label, 0.0)
        bs = baseline_shares.shares.get(label, 0.0)
        ratios[label] = None if bs == 0.0 else cs / bs
    return RatioTable(ratios)


def bias_correlations(
    by_label: Mapping[str, CountSeries], total_daily: CountSeries
) -> dict[str, Optional[float]]:
    """Pearson r of each label's daily counts against the normalized total
    distribution; None where a side has no variance."""
    reference = [v for _, v in normalize_series(total_daily)]
    out: dict[str, Optional[float]] = {}
    for label, series in by_label.items():
        try:
            out[label] = pearson([float(v) for v in series.values()], reference)
        except ZeroVariance:
            out[label] = None
    return out
