"""Title featurization: word / character n-gram TFIDF.

Character n-grams are taken over the whole normalized title (whitespace
runs collapsed to a single space), so they deliberately cross word
boundaries; that is where most of the sub-word morphological signal for
hypernym detection lives. Word features are plain whitespace-delimited
bags of tokens.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import EmptyVocabulary

DEFAULT_NGRAM_SIZES = frozenset({2, 3, 4, 5, 6})


class FeatureMode(Enum):
    WORD = "word"
    CHAR_NGRAM = "char"


@dataclass(frozen=True)
class FeatureSpec:
    mode: FeatureMode
    ngram_sizes: frozenset[int] = DEFAULT_NGRAM_SIZES
    lowercase: bool = True

    def __post_init__(self):
        if self.mode is FeatureMode.CHAR_NGRAM:
            if not self.ngram_sizes or any(n < 1 for n in self.ngram_sizes):
                raise ValueError("ngram_sizes must be nonempty with sizes >= 1")


@dataclass(frozen=True)
class SparseVector:
    """Sorted (column, value) entries; no explicit zeros."""

    entries: tuple[tuple[int, float], ...] = ()

    def norm(self) -> float:
        return math.sqrt(sum(v * v for _, v in self.entries))


def word_tokens(title: str, spec: FeatureSpec) -> Counter:
    """Bag of whitespace-delimited tokens."""
    if spec.lowercase:
        title = title.lower()
    return Counter(title.split())


def char_ngrams(title: str, spec: FeatureSpec) -> Counter:
    """Bag of character n-grams over the normalized title.

    Normalization collapses internal whitespace runs to one space and
    trims the ends, so a single space participates in n-grams that span
    word boundaries. Counting is per Unicode code point.
    """
    if spec.lowercase:
        title = title.lower()
    text = " ".join(title.split())
    grams: Counter = Counter()
    for n in sorted(spec.ngram_sizes):
        for i in range(len(text) - n + 1):
            grams[text[i : i + n]] += 1
    return grams


def extract_features(title: str, spec: FeatureSpec) -> Counter:
    if spec.mode is FeatureMode.WORD:
        return word_tokens(title, spec)
    return char_ngrams(title, spec)


class TfidfModel:
    """Vocabulary + smoothed idf weights fitted on a title corpus.

    Columns are assigned in lexicographic feature order, which makes the
    model independent of corpus order.
    """

    def __init__(self, spec: FeatureSpec, vocabulary: dict[str, int], df: list[int], n_docs: int):
        self.spec = spec
        self.vocabulary = vocabulary
        self.df = df
        self.n_docs = n_docs
        self.idf = [math.log((1 + n_docs) / (1 + d)) + 1.0 for d in df]

    @property
    def n_features(self) -> int:
        return len(self.vocabulary)

    def to_dict(self) -> dict:
        sizes = sorted(self.spec.ngram_sizes) if self.spec.mode is FeatureMode.CHAR_NGRAM else None
        features = sorted(self.vocabulary, key=self.vocabulary.get)
        return {
            "spec": {
                "mode": self.spec.mode.value,
                "ngram_sizes": sizes,
                "lowercase": self.spec.lowercase,
            },
            "n_docs": self.n_docs,
            "vocab": [[f, self.df[self.vocabulary[f]]] for f in features],
            "idf": self.idf,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TfidfModel":
        raw_spec = data["spec"]
        spec = FeatureSpec(
            mode=FeatureMode(raw_spec["mode"]),
            ngram_sizes=frozenset(raw_spec["ngram_sizes"] or DEFAULT_NGRAM_SIZES),
            lowercase=raw_spec["lowercase"],
        )
        vocabulary = {f: i for i, (f, _) in enumerate(data["vocab"])}
        df = [d for _, d in data["vocab"]]
        return cls(spec, vocabulary, df, data["n_docs"])


def fit_tfidf(titles: list[str], spec: FeatureSpec, min_df: int = 1) -> TfidfModel:
    """Fit vocabulary and idf: idf(t) = ln((1 + N) / (1 + df(t))) + 1."""
    df_counts: Counter = Counter()
    for title in titles:
        df_counts.update(set(extract_features(title, spec)))
    kept = sorted(f for f, d in df_counts.items() if d >= min_df)
    if not kept:
        raise EmptyVocabulary(
            f"no feature reached min_df={min_df} over {len(titles)} titles"
        )
    vocabulary = {f: i for i, f in enumerate(kept)}
    return TfidfModel(spec, vocabulary, [df_counts[f] for f in kept], len(titles))


def vectorize_title(model: TfidfModel, title: str) -> SparseVector:
    """TF x idf over the title's features, L2-normalized (zero if all OOV)."""
    counts = extract_features(title, model.spec)
    entries = []
    for feature, count in counts.items():
        col = model.vocabulary.get(feature)
        if col is not None:
            entries.append((col, count * model.idf[col]))
    if not entries:
        return SparseVector()
    entries.sort()
    norm = math.sqrt(sum(v * v for _, v in entries))
    return SparseVector(tuple((c, v / norm) for c, v in entries))


def vectorize_edge(model: TfidfModel, child_title: str, parent_title: str) -> SparseVector:
    """Concatenate per-title vectors: child in [0, V), parent in [V, 2V).

    Each half is L2-normalized on its own, so neither title's length
    dominates the pair.
    """
    offset = model.n_features
    child = vectorize_title(model, child_title)
    parent = vectorize_title(model, parent_title)
    return SparseVector(child.entries + tuple((c + offset, v) for c, v in parent.entries))


def save_tfidf(model: TfidfModel, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(model.to_dict(), fh, ensure_ascii=False)
        fh.write("\n")


def load_tfidf(path: str | Path) -> TfidfModel:
    with open(path, encoding="utf-8") as fh:
        return TfidfModel.from_dict(json.load(fh))
