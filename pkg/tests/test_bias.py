import pytest
from hypothesis import given
from hypothesis import strategies as st

from pulse import bias
from pulse.errors import DuplicatePublisher, UnknownLabel


def write_csv(path, rows):
    path.write_text("publisher,label\n" + "".join(f"{p},{l}\n" for p, l in rows))
    return path


@pytest.fixture
def ratings_files(tmp_path):
    mbfc = write_csv(tmp_path / "mbfc.csv", [
        ("nature.com", "Scientific"),
        ("cnn.com", "Left"),
        ("www.foxnews.com", "Right"),
        ("reuters.com", "Least Biased"),
    ])
    allsides = write_csv(tmp_path / "allsides.csv", [
        ("example.org", "Mixed"),
        ("cnn.com", "Left-center"),
        ("wsj.com", "Right-center"),
    ])
    return mbfc, allsides


class TestLoadRatings:
    def test_mbfc_only_row(self, ratings_files):
        registry = bias.load_ratings(*ratings_files)
        rating = registry["nature.com"]
        assert rating.mbfc == bias.SCIENTIFIC and rating.allsides is None

    def test_allsides_only_row(self, ratings_files):
        registry = bias.load_ratings(*ratings_files)
        rating = registry["example.org"]
        assert rating.mbfc is None and rating.allsides == bias.MIXED

    def test_merge_keeps_both(self, ratings_files):
        registry = bias.load_ratings(*ratings_files)
        rating = registry["cnn.com"]
        assert rating.mbfc == bias.LEFT and rating.allsides == bias.LEFT_CENTER

    def test_www_prefix_stripped(self, ratings_files):
        registry = bias.load_ratings(*ratings_files)
        assert "foxnews.com" in registry and "www.foxnews.com" not in registry

    def test_unknown_label(self, tmp_path):
        mbfc = write_csv(tmp_path / "mbfc.csv", [("x.com", "Centrist")])
        allsides = write_csv(tmp_path / "allsides.csv", [])
        with pytest.raises(UnknownLabel):
            bias.load_ratings(mbfc, allsides)

    def test_label_outside_rater_vocabulary(self, tmp_path):
        # "Mixed" is AllSides-only; "Scientific" is MBFC-only.
        mbfc = write_csv(tmp_path / "mbfc.csv", [("x.com", "Mixed")])
        allsides = write_csv(tmp_path / "allsides.csv", [])
        with pytest.raises(UnknownLabel):
            bias.load_ratings(mbfc, allsides)
        mbfc2 = write_csv(tmp_path / "mbfc2.csv", [])
        allsides2 = write_csv(tmp_path / "allsides2.csv", [("y.com", "Scientific")])
        with pytest.raises(UnknownLabel):
            bias.load_ratings(mbfc2, allsides2)

    def test_duplicate_publisher_in_one_file(self, tmp_path):
        mbfc = write_csv(tmp_path / "mbfc.csv", [("x.com", "Left"), ("X.COM", "Right")])
        allsides = write_csv(tmp_path / "allsides.csv", [])
        with pytest.raises(DuplicatePublisher):
            bias.load_ratings(mbfc, allsides)

    def test_case_insensitive_label_spelling(self, tmp_path):
        mbfc = write_csv(tmp_path / "mbfc.csv", [("x.com", "least biased")])
        allsides = write_csv(tmp_path / "allsides.csv", [])
        registry = bias.load_ratings(mbfc, allsides)
        assert registry["x.com"].mbfc == bias.LEAST_BIASED


class TestResolveBias:
    def test_mbfc_precedence(self, ratings_files):
        registry = bias.load_ratings(*ratings_files)
        assert bias.resolve_bias(registry, "cnn.com") == bias.LEFT

    def test_allsides_fallback(self, ratings_files):
        registry = bias.load_ratings(*ratings_files)
        assert bias.resolve_bias(registry, "wsj.com") == bias.RIGHT_CENTER

    def test_unrated_default(self, ratings_files):
        registry = bias.load_ratings(*ratings_files)
        assert bias.resolve_bias(registry, "unknown.net") == bias.UNRATED

    def test_lookup_normalizes_publisher(self, ratings_files):
        registry = bias.load_ratings(*ratings_files)
        assert bias.resolve_bias(registry, "WWW.CNN.com") == bias.LEFT
        assert bias.resolve_bias(registry, "FoxNews.com") == bias.RIGHT

    @given(st.text(max_size=40))
    def test_precedence_totality(self, publisher):
        registry = {
            "a.com": bias.SourceRating("a.com", mbfc=bias.SCIENTIFIC, allsides=bias.MIXED),
            "b.com": bias.SourceRating("b.com", allsides=bias.MIXED),
        }
        label = bias.resolve_bias(registry, publisher)
        assert label in bias.ALL_LABELS
        rating = registry.get(bias.normalize_publisher(publisher))
        if rating is not None and rating.mbfc is not None:
            assert label == rating.mbfc
