import json
import math
import random

import pytest
from hypothesis import given, strategies as st

from taxonet.errors import EmptyVocabulary
from taxonet.features import (
    FeatureMode,
    FeatureSpec,
    TfidfModel,
    char_ngrams,
    fit_tfidf,
    load_tfidf,
    save_tfidf,
    vectorize_edge,
    vectorize_title,
    word_tokens,
)

WORD = FeatureSpec(FeatureMode.WORD)
CHAR = FeatureSpec(FeatureMode.CHAR_NGRAM)


class TestWordTokens:
    def test_accented_title(self):
        assert dict(word_tokens("Entraîneur sportif américain", WORD)) == {
            "entraîneur": 1,
            "sportif": 1,
            "américain": 1,
        }

    def test_empty(self):
        assert not word_tokens("", WORD)

    def test_multiset_over_whitespace_runs(self):
        assert dict(word_tokens("a  b\tb", WORD)) == {"a": 1, "b": 2}

    def test_no_lowercase(self):
        spec = FeatureSpec(FeatureMode.WORD, lowercase=False)
        assert dict(word_tokens("Ab aB", spec)) == {"Ab": 1, "aB": 1}


class TestCharNgrams:
    def test_crosses_word_boundary(self):
        grams = char_ngrams("sportif américain", CHAR)
        assert "tif am" in grams
        assert "if am" in grams

    def test_too_short(self):
        assert not char_ngrams("x", CHAR)

    def test_exhaustive_small(self):
        spec = FeatureSpec(FeatureMode.CHAR_NGRAM, ngram_sizes=frozenset({2, 3}))
        assert dict(char_ngrams("abcd", spec)) == {
            "ab": 1, "bc": 1, "cd": 1, "abc": 1, "bcd": 1,
        }

    def test_whitespace_collapse(self):
        assert char_ngrams("a \t b", CHAR) == char_ngrams("a b", CHAR)
        assert char_ngrams("  ab  ", CHAR) == char_ngrams("ab", CHAR)

    def test_invalid_spec(self):
        with pytest.raises(ValueError):
            FeatureSpec(FeatureMode.CHAR_NGRAM, ngram_sizes=frozenset())
        with pytest.raises(ValueError):
            FeatureSpec(FeatureMode.CHAR_NGRAM, ngram_sizes=frozenset({0, 2}))

    @given(st.text(alphabet="ab é日\t ", max_size=30), st.sets(st.integers(1, 6), min_size=1))
    def test_counts_match_bruteforce(self, title, sizes):
        spec = FeatureSpec(FeatureMode.CHAR_NGRAM, ngram_sizes=frozenset(sizes))
        grams = char_ngrams(title, spec)
        text = " ".join(title.lower().split())
        assert sum(grams.values()) == sum(max(0, len(text) - n + 1) for n in sizes)
        for n in sizes:
            expected = [text[i : i + n] for i in range(len(text) - n + 1)]
            got = [g for g in grams.elements() if len(g) == n]
            assert sorted(got) == sorted(expected)


class TestFitTfidf:
    def test_hand_idf(self):
        model = fit_tfidf(["ab", "ab", "cd"], WORD)
        assert model.n_docs == 3
        assert model.df[model.vocabulary["ab"]] == 2
        assert model.df[model.vocabulary["cd"]] == 1
        assert abs(model.idf[model.vocabulary["ab"]] - (math.log(4 / 3) + 1)) < 1e-12
        assert abs(model.idf[model.vocabulary["cd"]] - (math.log(4 / 2) + 1)) < 1e-12

    def test_single_title_idf_is_one(self):
        model = fit_tfidf(["un seul titre"], WORD)
        assert all(abs(v - 1.0) < 1e-12 for v in model.idf)

    def test_min_df_filters(self):
        with pytest.raises(EmptyVocabulary):
            fit_tfidf(["ab", "ab", "cd"], WORD, min_df=3)
        model = fit_tfidf(["ab", "ab", "cd"], WORD, min_df=2)
        assert list(model.vocabulary) == ["ab"]

    def test_empty_corpus(self):
        with pytest.raises(EmptyVocabulary):
            fit_tfidf([], WORD)

    def test_columns_lexicographic(self):
        model = fit_tfidf(["zz yy xx"], WORD)
        assert list(model.vocabulary) == ["xx", "yy", "zz"]
        assert [model.vocabulary[f] for f in ("xx", "yy", "zz")] == [0, 1, 2]

    def test_order_insensitive(self):
        titles = [f"mot{i} truc{i % 3}" for i in range(20)]
        shuffled = titles[:]
        random.Random(5).shuffle(shuffled)
        a = fit_tfidf(titles, WORD)
        b = fit_tfidf(shuffled, WORD)
        assert a.vocabulary == b.vocabulary
        assert a.idf == b.idf


class TestVectorize:
    def test_single_feature_unit(self):
        model = fit_tfidf(["solo"], WORD)
        vec = vectorize_title(model, "solo")
        assert vec.entries == ((0, 1.0),)

    def test_proportional_and_normalized(self):
        model = fit_tfidf(["ab", "ab", "cd"], WORD)
        vec = vectorize_title(model, "ab ab cd")
        idf_ab = model.idf[model.vocabulary["ab"]]
        idf_cd = model.idf[model.vocabulary["cd"]]
        raw = {model.vocabulary["ab"]: 2 * idf_ab, model.vocabulary["cd"]: 1 * idf_cd}
        norm = math.sqrt(sum(v * v for v in raw.values()))
        for col, value in vec.entries:
            assert abs(value - raw[col] / norm) < 1e-12
        assert abs(vec.norm() - 1.0) < 1e-9

    def test_oov_zero_vector(self):
        model = fit_tfidf(["ab"], WORD)
        assert vectorize_title(model, "zz qq").entries == ()

    def test_edge_halves(self):
        model = fit_tfidf(["ab", "cd"], WORD)
        v = vectorize_edge(model, "zz", "ab")
        assert all(col >= model.n_features for col, _ in v.entries)
        v = vectorize_edge(model, "ab", "ab")
        lower = [(c, x) for c, x in v.entries if c < model.n_features]
        upper = [(c - model.n_features, x) for c, x in v.entries if c >= model.n_features]
        assert lower == upper

    def test_edge_composes_from_halves(self):
        model = fit_tfidf(["Auguste", "Empereur romain", "Empereur"], CHAR)
        edge = vectorize_edge(model, "Auguste", "Empereur romain")
        child = vectorize_title(model, "Auguste")
        parent = vectorize_title(model, "Empereur romain")
        expected = child.entries + tuple((c + model.n_features, v) for c, v in parent.entries)
        assert edge.entries == expected

    def test_half_norms(self):
        model = fit_tfidf(["aa bb", "cc dd"], WORD)
        v = vectorize_edge(model, "aa cc", "dd")
        lower = math.sqrt(sum(x * x for c, x in v.entries if c < model.n_features))
        upper = math.sqrt(sum(x * x for c, x in v.entries if c >= model.n_features))
        assert abs(lower - 1.0) < 1e-9 and abs(upper - 1.0) < 1e-9

    def test_entries_strictly_increasing(self):
        model = fit_tfidf(["aa bb cc"], WORD)
        v = vectorize_edge(model, "cc aa", "bb aa")
        cols = [c for c, _ in v.entries]
        assert cols == sorted(cols) and len(cols) == len(set(cols))


def test_model_json_roundtrip(tmp_path):
    model = fit_tfidf(["Entraîneur sportif", "sportif américain"], CHAR, min_df=1)
    save_tfidf(model, tmp_path / "m.json")
    data = json.loads((tmp_path / "m.json").read_text(encoding="utf-8"))
    assert data["spec"] == {"mode": "char", "ngram_sizes": [2, 3, 4, 5, 6], "lowercase": True}
    again = load_tfidf(tmp_path / "m.json")
    assert again.vocabulary == model.vocabulary
    assert again.idf == model.idf
    assert again.n_docs == model.n_docs
    assert again.spec == model.spec
