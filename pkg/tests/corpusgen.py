"""Synthetic corpus generators and naive reference implementations.

The reference scan here is deliberately independent of pulse.gkg: it spells
out its own parsing, matching, and dedup rules so the streaming path can be
checked against a two-pass brute-force answer.
"""

from __future__ import annotations

import random
from datetime import date, timedelta

# Vocabulary with no overlap with the inclusion keywords (no "covid",
# "coronavirus", ... substrings anywhere).
SAFE_WORDS = [
    "market", "election", "weather", "sports", "budget", "travel", "music",
    "garden", "school", "traffic", "cinema", "recipe", "festival", "housing",
    "energy", "wildlife", "finance", "startup", "museum", "library",
]

MATCH_KEYWORDS = ["coronavirus", "covid", "2019-ncov", "ncov-2019", "ncov2019", "sars-cov-2"]
MATCH_THEMES = [
    "WB_2167_PANDEMICS",
    "HEALTH_PANDEMIC",
    "TAX_DISEASE_CORONAVIRUS",
    "TAX_DISEASE_CORONAVIRUSES",
    "TAX_DISEASE_CORONAVIRUS_INFECTIONS",
]
SAFE_THEMES = ["ECON_STOCKMARKET", "GENERAL_GOVERNMENT", "SOC_POINTSOFINTEREST"]

BASE_DATE = date(2020, 1, 1)


def make_line(d, publisher, identifier, title, themes, tone):
    return "\t".join([
        d.strftime("%Y%m%d"), publisher, identifier, title,
        ";".join(themes), str(tone),
    ]) + "\n"


def synth_corpus(
    n: int,
    *,
    seed: int,
    match_fraction: float = 0.6,
    dup_count: int = 0,
    malformed_count: int = 0,
) -> list[str]:
    """Build n lines: a mix of matching, non-matching, duplicate, and broken rows.

    ``dup_count`` lines repeat the (publisher, title) of an earlier matching
    line (with a different identifier). ``malformed_count`` lines have the
    wrong column count. The rest split between matching and non-matching
    records per ``match_fraction``.
    """
    rng = random.Random(seed)
    lines: list[str] = []
    matched_pairs: list[tuple[str, str]] = []
    fresh = n - dup_count - malformed_count
    if fresh < 0:
        raise ValueError("dup_count + malformed_count exceeds n")

    for i in range(fresh):
        d = BASE_DATE + timedelta(days=rng.randrange(0, 152))
        publisher = f"src{rng.randrange(0, max(2, n // 4))}.example.com"
        base_title = " ".join(rng.choices(SAFE_WORDS, k=4)) + f" {i}"
        tone = round(rng.uniform(-10, 10), 2)
        if rng.random() < match_fraction:
            if rng.random() < 0.5:
                kw = rng.choice(MATCH_KEYWORDS)
                title = f"{kw.capitalize()} {base_title}"
                themes = rng.choices(SAFE_THEMES, k=rng.randrange(0, 3))
            else:
                title = base_title
                themes = [rng.choice(MATCH_THEMES)] + rng.choices(SAFE_THEMES, k=rng.randrange(0, 2))
            matched_pairs.append((publisher, title))
            identifier = f"https://{publisher}/story/{i}"
        else:
            title = base_title
            themes = rng.choices(SAFE_THEMES, k=rng.randrange(0, 3))
            identifier = f"https://{publisher}/story/{i}"
        lines.append(make_line(d, publisher, identifier, title, themes, tone))

    for j in range(dup_count):
        publisher, title = rng.choice(matched_pairs)
        d = BASE_DATE + timedelta(days=rng.randrange(0, 152))
        # a matching theme keeps the duplicate inside the filtered set even
        # when the original matched on its themes rather than its title
        lines.append(make_line(d, publisher, identifier=f"https://{publisher}/dup/{j}",
                               title=title, themes=[rng.choice(MATCH_THEMES)], tone=0.0))

    for _ in range(malformed_count):
        lines.append("broken\tline\n")

    rng.shuffle(lines)
    return lines


def reference_scan(lines: list[str]) -> list[tuple]:
    """Naive two-pass reference: parse all, filter, then dedup first-wins.

    Returns the kept records as plain tuples
    (date, publisher, identifier, title, themes, tone).
    """
    parsed = []
    for line in lines:
        cols = line.rstrip("\r\n").split("\t")
        if len(cols) != 6:
            continue
        raw_date, publisher, identifier, title, raw_themes, raw_tone = cols
        if not publisher.strip():
            continue
        if len(raw_date) != 8 or not raw_date.isdigit():
            continue
        try:
            d = date(int(raw_date[:4]), int(raw_date[4:6]), int(raw_date[6:8]))
            tone = float(raw_tone)
        except ValueError:
            continue
        themes = tuple(t for t in raw_themes.split(";") if t)
        parsed.append((d, publisher.strip(), identifier, title, themes, tone))

    matching = []
    for rec in parsed:
        _, publisher, identifier, title, themes, _ = rec
        hit = False
        for kw in ["coronavirus", "covid", "2019-ncov", "ncov-2019", "ncov2019", "sars-cov-2"]:
            if kw in title.lower() or kw in identifier.lower():
                hit = True
        for t in themes:
            if t in ("WB_2167_PANDEMICS", "HEALTH_PANDEMIC", "TAX_DISEASE_CORONAVIRUS",
                     "TAX_DISEASE_CORONAVIRUSES", "TAX_DISEASE_CORONAVIRUS_INFECTIONS"):
                hit = True
        if hit:
            matching.append(rec)

    seen: dict[tuple[str, str], tuple] = {}
    for rec in matching:
        key = (rec[1].strip().lower(), " ".join(rec[3].lower().split()))
        if key not in seen:
            seen[key] = rec
    return list(seen.values())
