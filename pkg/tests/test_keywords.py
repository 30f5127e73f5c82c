import random
from collections import Counter
from datetime import date

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pulse import keywords
from pulse.gkg import Article


def brute_force_counts(titles):
    """Independent counter: list-append then dict tally, no Counter reuse."""
    tally = {}
    for title in titles:
        for token in keywords.tokenize_title(title):
            if token in keywords.STOP_TOKENS:
                continue
            lemma = keywords.lemmatize(token)
            tally[lemma] = tally.get(lemma, 0) + 1
    return tally


def brute_force_rank(tally, k):
    items = sorted(tally.items())
    items.sort(key=lambda kv: kv[1], reverse=True)  # stable: keeps lexicographic ties
    return [(lemma, n) for lemma, n in items[:k]]


def make_article(title):
    return Article(date(2020, 3, 1), "x.com", "https://x.com/a", title, (), 0.0,
                   covid_related=True, matched_criteria=frozenset({"title_url_keyword"}))


class TestTokenize:
    def test_punctuation_split(self):
        assert keywords.tokenize_title("COVID-19: Cases Surge!") == ["covid-19", "cases", "surge"]

    def test_empty(self):
        assert keywords.tokenize_title("") == []

    def test_quotes_and_digits(self):
        assert keywords.tokenize_title("Trump says 2019-nCoV 'contained'") == \
            ["trump", "says", "2019-ncov", "contained"]

    def test_no_whitespace_or_empty_tokens(self):
        for token in keywords.tokenize_title("a--b  ,, c-d-e 12,5"):
            assert token and " " not in token


class TestLemmatize:
    @pytest.mark.parametrize("token,lemma", [
        ("cases", "case"),
        ("says", "say"),
        ("said", "say"),
        ("covid-19", "covid-19"),
        ("2019-ncov", "2019-ncov"),
        ("deaths", "death"),
        ("news", "news"),          # stays distinct from "new"
        ("new", "new"),
        ("viruses", "virus"),
        ("virus", "virus"),
        ("countries", "country"),
        ("dies", "die"),
        ("classes", "class"),
        ("matches", "match"),
        ("rates", "rate"),
        ("running", "run"),
        ("making", "make"),
        ("reporting", "report"),
        ("testing", "test"),
        ("opening", "open"),
        ("reported", "report"),
        ("stopped", "stop"),
        ("baked", "bake"),
        ("contained", "contain"),
        ("spring", "spring"),      # no vowel before -ing
        ("pandemic", "pandemic"),
        ("coronavirus", "coronavirus"),
    ])
    def test_rules(self, token, lemma):
        assert keywords.lemmatize(token) == lemma

    def test_deterministic(self):
        assert keywords.lemmatize("cases") == keywords.lemmatize("cases")


class TestTopKeywords:
    def test_dominant_keyword_ranks_first(self):
        arts = [make_article(f"Coronavirus update {i}") for i in range(50)]
        ranked = keywords.top_keywords(arts, 3)
        assert ranked[0].lemma == "coronavirus"
        assert ranked[0].mentions == 50

    def test_tie_breaks_lexicographic(self):
        arts = [make_article("zebra apple") for _ in range(3)]
        ranked = keywords.top_keywords(arts, 2)
        assert [kc.lemma for kc in ranked] == ["apple", "zebra"]
        assert ranked[0].mentions == ranked[1].mentions == 3

    def test_stop_tokens_filtered(self):
        arts = [make_article("the virus in the city")]
        lemmas = {kc.lemma for kc in keywords.top_keywords(arts, 10)}
        assert "the" not in lemmas and "in" not in lemmas
        assert "virus" in lemmas

    def test_per_title_multiplicity(self):
        arts = [make_article("virus virus virus")]
        ranked = keywords.top_keywords(arts, 1)
        assert ranked[0] == keywords.KeywordCount("virus", 3)

    def test_k_validation(self):
        with pytest.raises(ValueError):
            keywords.top_keywords([], 0)

    def test_planted_frequency_corpus_matches_brute_force(self):
        rng = random.Random(11)
        vocab = ["alpha", "beta", "gamma", "delta", "virus", "cases", "says",
                 "report", "city", "state", "covid-19", "update"]
        titles = []
        for _ in range(1000):
            titles.append(" ".join(rng.choices(vocab, k=rng.randrange(3, 9))))
        arts = [make_article(t) for t in titles]
        expected = brute_force_rank(brute_force_counts(titles), 1000)
        got = [(kc.lemma, kc.mentions) for kc in keywords.top_keywords(arts, 1000)]
        assert got == expected


class TestCountProperties:
    @given(st.lists(st.text(alphabet="abco vid-19 ", max_size=30), max_size=40))
    @settings(max_examples=60)
    def test_count_conservation(self, titles):
        counts = keywords.count_lemmas(titles)
        expected_tokens = sum(
            1
            for t in titles
            for token in keywords.tokenize_title(t)
            if token not in keywords.STOP_TOKENS
        )
        assert sum(counts.values()) == expected_tokens

    @given(st.lists(st.sampled_from(
        ["covid cases surge", "says virus", "new report", "deaths rise"]), max_size=30))
    def test_monotone_ranking(self, titles):
        ranked = keywords.rank(keywords.count_lemmas(titles), 100)
        values = [kc.mentions for kc in ranked]
        assert values == sorted(values, reverse=True)

    @given(st.lists(st.sampled_from(
        ["covid cases", "virus says", "news report", "case counts"]),
        min_size=1, max_size=40),
        st.integers(min_value=1, max_value=5))
    def test_shard_count_independence(self, titles, shards):
        whole = keywords.count_lemmas(titles)
        parts = [Counter() for _ in range(shards)]
        for i, title in enumerate(titles):
            parts[i % shards].update(keywords.count_lemmas([title]))
        merged = keywords.merge_counts(parts)
        assert merged == whole
        assert keywords.rank(merged, 10) == keywords.rank(whole, 10)
