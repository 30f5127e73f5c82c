"""Streaming ingest of GKG-style news records.

Parses tab-delimited news dumps one line at a time, keeps the records that
look COVID-related (keyword scan over title/URL plus exact theme codes),
drops repeated (publisher, title) pairs, and hands normalized articles to a
sink. Designed so that memory stays flat in input size apart from the
fingerprint index used for deduplication.

Input layout (one record per line, 6 tab-separated columns):

    YYYYMMDD <TAB> publisher <TAB> document identifier <TAB> title
    <TAB> semicolon-joined themes <TAB> decimal tone

An adapter for raw 27-column GKG 2.x dumps is available via ``raw=True``
(date, SourceCommonName, DocumentIdentifier, Themes, V2Tone, and the page
title from the Extras column).
"""

from __future__ import annotations

import gzip
import hashlib
import io
import math
import os
import re
from dataclasses import dataclass, field
from datetime import date
from typing import Callable, Iterable, Iterator, Union

from .errors import MalformedRecord

# Case-insensitive substrings scanned over title and document identifier.
COVID_KEYWORDS = (
    "coronavirus",
    "covid",
    "2019-ncov",
    "ncov-2019",
    "ncov2019",
    "sars-cov-2",
)

# Exact (case-sensitive) theme codes.
COVID_THEMES = frozenset({
    "WB_2167_PANDEMICS",
    "HEALTH_PANDEMIC",
    "TAX_DISEASE_CORONAVIRUS",
    "TAX_DISEASE_CORONAVIRUSES",
    "TAX_DISEASE_CORONAVIRUS_INFECTIONS",
})

CRITERION_KEYWORD = "title_url_keyword"
CRITERION_THEME = "theme_match"


@dataclass(slots=True, frozen=True)
class GkgRecord:
    """One normalized news record."""

    record_date: date
    publisher: str
    document_identifier: str
    title: str
    themes: tuple[str, ...]
    tone: float


@dataclass(slots=True, frozen=True)
class Article(GkgRecord):
    """A record that passed the COVID-inclusion criteria."""

    covid_related: bool = False
    matched_criteria: frozenset[str] = field(default_factory=frozenset)


@dataclass(slots=True, frozen=True)
class DedupKey:
    """128-bit fingerprint of the normalized (publisher, title) pair."""

    fingerprint: bytes


@dataclass(slots=True)
class IngestReport:
    """Counters describing one ingestion run."""

    lines_read: int = 0
    malformed: int = 0
    criteria_matched: int = 0
    duplicates_dropped: int = 0
    emitted: int = 0
    sources_failed: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "lines_read": self.lines_read,
            "malformed": self.malformed,
            "criteria_matched": self.criteria_matched,
            "duplicates_dropped": self.duplicates_dropped,
            "emitted": self.emitted,
            "sources_failed": self.sources_failed,
        }


def parse_gkg_line(line: str) -> GkgRecord:
    """Parse one 6-column line into a GkgRecord.

    Raises MalformedRecord on wrong column count, unparseable date or tone,
    or an empty publisher. Empty trailing fields (title, themes) are fine.
    """
    fields = line.rstrip("\r\n").split("\t")
    if len(fields) != 6:
        raise MalformedRecord(f"expected 6 columns, got {len(fields)}")
    raw_date, publisher, identifier, title, raw_themes, raw_tone = fields
    publisher = publisher.strip()
    if not publisher:
        raise MalformedRecord("empty publisher")
    record_date = _parse_yyyymmdd(raw_date)
    try:
        tone = float(raw_tone)
    except ValueError:
        raise MalformedRecord(f"unparseable tone {raw_tone!r}") from None
    if not math.isfinite(tone):
        raise MalformedRecord(f"non-finite tone {raw_tone!r}")
    themes = tuple(t for t in raw_themes.split(";") if t)
    return GkgRecord(record_date, publisher, identifier, title, themes, tone)


# Raw GKG 2.x column positions (tab-delimited, 27 columns).
_RAW_COLUMNS = 27
_RAW_DATE = 1            # YYYYMMDDHHMMSS
_RAW_PUBLISHER = 3       # SourceCommonName
_RAW_IDENTIFIER = 4      # DocumentIdentifier
_RAW_THEMES = 7
_RAW_TONE = 15           # V2Tone; first comma-separated value
_RAW_EXTRAS = 26         # XML-ish blob carrying <PAGE_TITLE>

_PAGE_TITLE_RE = re.compile(r"<PAGE_TITLE>(.*?)</PAGE_TITLE>", re.DOTALL)


def parse_raw_gkg_line(line: str) -> GkgRecord:
    """Adapter for raw 27-column GKG dumps; same error contract as parse_gkg_line."""
    fields = line.rstrip("\r\n").split("\t")
    if len(fields) != _RAW_COLUMNS:
        raise MalformedRecord(f"expected {_RAW_COLUMNS} columns, got {len(fields)}")
    publisher = fields[_RAW_PUBLISHER].strip()
    if not publisher:
        raise MalformedRecord("empty publisher")
    record_date = _parse_yyyymmdd(fields[_RAW_DATE][:8])
    tone_field = fields[_RAW_TONE].split(",", 1)[0]
    try:
        tone = float(tone_field)
    except ValueError:
        raise MalformedRecord(f"unparseable tone {tone_field!r}") from None
    if not math.isfinite(tone):
        raise MalformedRecord(f"non-finite tone {tone_field!r}")
    themes = tuple(t for t in fields[_RAW_THEMES].split(";") if t)
    m = _PAGE_TITLE_RE.search(fields[_RAW_EXTRAS])
    title = m.group(1) if m else ""
    return GkgRecord(record_date, publisher, fields[_RAW_IDENTIFIER], title, themes, tone)


def _parse_yyyymmdd(text: str) -> date:
    # strptime is too slow for the hot path; slice and validate via date().
    if len(text) != 8 or not text.isdigit():
        raise MalformedRecord(f"unparseable date {text!r}")
    try:
        return date(int(text[:4]), int(text[4:6]), int(text[6:8]))
    except ValueError:
        raise MalformedRecord(f"unparseable date {text!r}") from None


def matches_covid_criteria(record: GkgRecord) -> tuple[bool, frozenset[str]]:
    """Check the inclusion criteria; returns (matched, which criteria fired).

    Keywords are case-insensitive substrings of the title or the document
    identifier; themes must equal one of the five codes exactly.
    """
    matched = set()
    haystack = record.title.lower() + "\n" + record.document_identifier.lower()
    for kw in COVID_KEYWORDS:
        if kw in haystack:
            matched.add(CRITERION_KEYWORD)
            break
    for theme in record.themes:
        if theme in COVID_THEMES:
            matched.add(CRITERION_THEME)
            break
    return bool(matched), frozenset(matched)


def dedup_key(record: GkgRecord) -> DedupKey:
    """Fingerprint of the lowercased publisher and whitespace-collapsed title."""
    publisher = record.publisher.strip().lower()
    title = " ".join(record.title.lower().split())
    digest = hashlib.blake2b(
        publisher.encode("utf-8") + b"\x1f" + title.encode("utf-8"),
        digest_size=16,
    ).digest()
    return DedupKey(digest)


LineSource = Union[str, os.PathLike, Iterable[str]]


def open_text_auto(path: Union[str, os.PathLike]) -> io.TextIOBase:
    """Open a text file, transparently decompressing gzip (detected by magic bytes)."""
    f = open(path, "rb")
    magic = f.read(2)
    f.seek(0)
    if magic == b"\x1f\x8b":
        return io.TextIOWrapper(gzip.GzipFile(fileobj=f), encoding="utf-8", errors="replace")
    return io.TextIOWrapper(f, encoding="utf-8", errors="replace")


def _iter_lines(source: LineSource) -> Iterator[str]:
    if isinstance(source, (str, os.PathLike)):
        with open_text_auto(source) as f:
            yield from f
    else:
        yield from source


def ingest(
    sources: Iterable[LineSource],
    sink: Callable[[Article], None],
    *,
    raw: bool = False,
    dedup: bool = True,
) -> IngestReport:
    """Single-pass ingest over the given sources.

    Every well-formed, criteria-matching record whose (publisher, title)
    fingerprint has not been seen before is handed to ``sink`` exactly once.
    Malformed lines are counted and skipped. An I/O failure aborts only the
    offending source. With ``dedup=False`` no fingerprint index is kept and
    nothing is dropped (used by the memory benchmark).
    """
    parse = parse_raw_gkg_line if raw else parse_gkg_line
    report = IngestReport()
    seen: set[bytes] = set()
    for source in sources:
        try:
            for line in _iter_lines(source):
                report.lines_read += 1
                try:
                    record = parse(line)
                except MalformedRecord:
                    report.malformed += 1
                    continue
                ok, criteria = matches_covid_criteria(record)
                if not ok:
                    continue
                report.criteria_matched += 1
                if dedup:
                    fp = dedup_key(record).fingerprint
                    if fp in seen:
                        report.duplicates_dropped += 1
                        continue
                    seen.add(fp)
                report.emitted += 1
                sink(Article(
                    record.record_date,
                    record.publisher,
                    record.document_identifier,
                    record.title,
                    record.themes,
                    record.tone,
                    covid_related=True,
                    matched_criteria=criteria,
                ))
        except OSError:
            report.sources_failed += 1
    return report
