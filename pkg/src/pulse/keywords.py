"""Keyword extraction from article titles: tokenize, lemmatize, rank.

The lemmatizer is rule-based and fully deterministic: plural reduction
(-s/-es/-ies), -ing/-ed reduction with consonant-doubling undo and silent-e
restoration, and a small irregular table. Tokens carrying digits or hyphens
pass through untouched so "covid-19" and "2019-ncov" survive intact.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

_TOKEN_RE = re.compile(r"[a-z0-9]+(?:-[a-z0-9]+)*")

# Tokens dropped before counting; deliberately light so content words
# like "new" and "news" survive.
STOP_TOKENS = frozenset({"a", "an", "the", "of", "to", "in", "for", "on", "and", "at"})

# Words the suffix rules would mangle, plus true irregulars.
IRREGULAR = {
    "says": "say",
    "said": "say",
    "cases": "case",
    "news": "news",
}

_VOWELS = frozenset("aeiou")
_DOUBLABLE = frozenset("bdgmnprt")


@dataclass(slots=True, frozen=True)
class KeywordCount:
    lemma: str
    mentions: int


def tokenize_title(title: str) -> list[str]:
    """Lowercased tokens split on whitespace/punctuation, keeping internal hyphens."""
    return _TOKEN_RE.findall(title.lower())


def _measure(stem: str) -> int:
    """Count vowel-to-consonant transitions (the VC measure)."""
    m = 0
    prev_vowel = False
    for ch in stem:
        is_vowel = ch in _VOWELS
        if prev_vowel and not is_vowel:
            m += 1
        prev_vowel = is_vowel
    return m


def _has_vowel(stem: str) -> bool:
    return any(ch in _VOWELS for ch in stem)


def _ends_cvc(stem: str) -> bool:
    if len(stem) < 3:
        return False
    c1, v, c2 = stem[-3], stem[-2], stem[-1]
    return (c1 not in _VOWELS and v in _VOWELS
            and c2 not in _VOWELS and c2 not in "wxy")


def _strip_participle(token: str, suffix: str) -> str:
    stem = token[: -len(suffix)]
    if len(stem) < 3 or not _has_vowel(stem):
        return token
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] in _DOUBLABLE:
        return stem[:-1]  # running -> run
    if _measure(stem) == 1 and _ends_cvc(stem):
        return stem + "e"  # making -> make
    return stem


def lemmatize(token: str) -> str:
    """Deterministic rule-based lemma of one token."""
    if "-" in token or any(ch.isdigit() for ch in token):
        return token
    if token in IRREGULAR:
        return IRREGULAR[token]
    if token.endswith("ies") and len(token) > 4:
        return token[:-3] + "y"
    if token.endswith(("ses", "xes", "zes", "ches", "shes")) and len(token) > 4:
        return token[:-2]
    if token.endswith("es") and len(token) > 3:
        return token[:-1]
    if (token.endswith("s") and len(token) > 3
            and not token.endswith(("ss", "us", "is"))):
        return token[:-1]
    if token.endswith("ing") and len(token) > 5:
        return _strip_participle(token, "ing")
    if token.endswith("ed") and len(token) > 4:
        return _strip_participle(token, "ed")
    return token


def count_lemmas(titles: Iterable[str]) -> Counter:
    """Occurrence counts of lemmas across titles (multiplicity preserved)."""
    counts: Counter = Counter()
    for title in titles:
        for token in tokenize_title(title):
            if token in STOP_TOKENS:
                continue
            counts[lemmatize(token)] += 1
    return counts


def merge_counts(parts: Iterable[Counter]) -> Counter:
    """Additive merge of per-shard counters."""
    total: Counter = Counter()
    for part in parts:
        total.update(part)
    return total


def rank(counts: Counter, k: int) -> list[KeywordCount]:
    """Top k by count, ties broken lexicographically ascending."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [KeywordCount(lemma, n) for lemma, n in ordered[:k]]


def top_keywords(articles, k: int) -> list[KeywordCount]:
    """Ranked keyword counts over the titles of an article stream."""
    return rank(count_lemmas(a.title for a in articles), k)
