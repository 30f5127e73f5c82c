"""Publisher bias registry built from MBFC and AllSides rating tables.

Both inputs are CSV files with a (publisher, label) header. MBFC is the
primary rater; AllSides fills in publishers MBFC does not cover. Lookups
fall back to "Unrated" for unknown publishers.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional

from .errors import DuplicatePublisher, UnknownLabel

LEFT = "Left"
LEFT_CENTER = "Left-center"
LEAST_BIASED = "Least Biased"
RIGHT_CENTER = "Right-center"
RIGHT = "Right"
SCIENTIFIC = "Scientific"
QUESTIONABLE = "Questionable Sources"
CONSPIRACY = "Conspiracy-pseudoscience"
MIXED = "Mixed"
UNRATED = "Unrated"

MBFC_LABELS = frozenset({
    LEFT, LEFT_CENTER, LEAST_BIASED, RIGHT_CENTER, RIGHT,
    SCIENTIFIC, QUESTIONABLE, CONSPIRACY,
})
ALLSIDES_LABELS = frozenset({
    LEFT, LEFT_CENTER, LEAST_BIASED, RIGHT_CENTER, RIGHT, MIXED,
})

# Every label resolve_bias can return, in display order.
ALL_LABELS = (
    LEFT, LEFT_CENTER, LEAST_BIASED, RIGHT_CENTER, RIGHT,
    SCIENTIFIC, QUESTIONABLE, CONSPIRACY, MIXED, UNRATED,
)

_CANONICAL = {label.lower(): label for label in MBFC_LABELS | ALLSIDES_LABELS}


@dataclass(slots=True)
class SourceRating:
    """Per-publisher ratings; at least one of the two raters is present."""

    publisher: str
    mbfc: Optional[str] = None
    allsides: Optional[str] = None


Registry = dict[str, SourceRating]


def normalize_publisher(publisher: str) -> str:
    """Lowercase and strip a leading 'www.'; rating sites list domains inconsistently."""
    p = publisher.strip().lower()
    if p.startswith("www."):
        p = p[4:]
    return p


def _canonical_label(raw: str, allowed: frozenset[str], rater: str) -> str:
    label = _CANONICAL.get(raw.strip().lower())
    if label is None or label not in allowed:
        raise UnknownLabel(f"{rater} label {raw!r} not in {sorted(allowed)}")
    return label


def _read_ratings_csv(path, allowed: frozenset[str], rater: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or {"publisher", "label"} - set(reader.fieldnames):
            raise UnknownLabel(f"{rater} file {path} must have publisher,label columns")
        for row in reader:
            publisher = normalize_publisher(row["publisher"])
            if not publisher:
                continue
            label = _canonical_label(row["label"], allowed, rater)
            if publisher in out:
                raise DuplicatePublisher(f"{rater} lists {publisher!r} twice")
            out[publisher] = label
    return out


def load_ratings(mbfc_file, allsides_file) -> Registry:
    """Merge both rating files into one registry keyed by normalized publisher."""
    mbfc = _read_ratings_csv(mbfc_file, MBFC_LABELS, "MBFC")
    allsides = _read_ratings_csv(allsides_file, ALLSIDES_LABELS, "AllSides")
    registry: Registry = {}
    for publisher, label in mbfc.items():
        registry[publisher] = SourceRating(publisher, mbfc=label)
    for publisher, label in allsides.items():
        if publisher in registry:
            registry[publisher].allsides = label
        else:
            registry[publisher] = SourceRating(publisher, allsides=label)
    return registry


def resolve_bias(registry: Registry, publisher: str) -> str:
    """MBFC label if rated there, else AllSides, else Unrated."""
    rating = registry.get(normalize_publisher(publisher))
    if rating is None:
        return UNRATED
    if rating.mbfc is not None:
        return rating.mbfc
    if rating.allsides is not None:
        return rating.allsides
    return UNRATED
