"""Whole-dictionary cooccurrence lexicon and pair weighting.

Two words cooccur when they appear in the same definition (or within a
sliding window of content words); stopwords and headwords are excluded
from the counts. Pair weights come in three schemes: raw frequency,
mutual information, and association ratio (joint-probability-scaled MI),
the latter two floored at zero so every downstream weight stays
non-negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from . import _kernels
from .dictionary import Dictionary, content_words


class WeightScheme(str, Enum):
    FREQUENCY = "frequency"
    MUTUAL_INFORMATION = "mutual_information"
    ASSOCIATION_RATIO = "association_ratio"


@dataclass(frozen=True, slots=True)
class WindowSpec:
    """Pairing context: the whole definition, or a window of n content words."""

    size: int | None = None  # None = whole definition

    def __post_init__(self):
        if self.size is not None and (self.size < 3 or self.size % 2 == 0):
            raise ValueError(f"window size must be an odd integer >= 3, got {self.size}")

    @classmethod
    def whole(cls) -> "WindowSpec":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "WindowSpec":
        text = text.strip()
        if text == "whole":
            return cls(None)
        if text.isdigit():
            return cls(int(text))
        raise ValueError(f"window must be 'whole' or an odd integer >= 3, got {text!r}")

    def __str__(self) -> str:
        return "whole" if self.size is None else str(self.size)


class EncodedLexicon:
    """Integer-encoded view of a lexicon: sorted vocab plus a symmetric CSR
    adjacency with per-scheme weight arrays. Built once, cached, read-only."""

    def __init__(self, lexicon: "CooccurrenceLexicon"):
        self.vocab = sorted(lexicon.unigram_counts)
        self.word_id = {w: i for i, w in enumerate(self.vocab)}
        n = len(self.vocab)
        self.freq = np.zeros(n, dtype=np.float64)
        for w, c in lexicon.unigram_counts.items():
            self.freq[self.word_id[w]] = c
        self.total_tokens = float(lexicon.total_tokens)

        pairs = lexicon.pair_items()
        rows = np.empty(2 * len(pairs), dtype=np.int64)
        cols = np.empty(2 * len(pairs), dtype=np.int64)
        counts = np.empty(2 * len(pairs), dtype=np.int64)
        for k, ((a, b), c) in enumerate(pairs):
            ia, ib = self.word_id[a], self.word_id[b]
            rows[2 * k], cols[2 * k], counts[2 * k] = ia, ib, c
            rows[2 * k + 1], cols[2 * k + 1], counts[2 * k + 1] = ib, ia, c
        order = np.lexsort((cols, rows))
        rows, self.cols, self.counts = rows[order], cols[order], counts[order]
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(self.indptr, rows + 1, 1)
        np.cumsum(self.indptr, out=self.indptr)
        self._weights: dict[WeightScheme, np.ndarray] = {}

    def encode(self, words: list[str]) -> np.ndarray:
        return np.array([self.word_id.get(w, -1) for w in words], dtype=np.int64)

    def weights(self, scheme: WeightScheme) -> np.ndarray:
        """CSR data array under the given scheme (cached)."""
        cached = self._weights.get(scheme)
        if cached is not None:
            return cached
        c = self.counts.astype(np.float64)
        if scheme is WeightScheme.FREQUENCY:
            data = c
        else:
            rows = np.repeat(np.arange(len(self.vocab)), np.diff(self.indptr))
            base = np.log2((self.total_tokens * c) / (self.freq[rows] * self.freq[self.cols]))
            if scheme is WeightScheme.MUTUAL_INFORMATION:
                data = np.maximum(base, 0.0)
            else:
                data = np.maximum((c / self.total_tokens) * base, 0.0)
        self._weights[scheme] = data
        return data


@dataclass(frozen=True)
class CooccurrenceLexicon:
    """Symmetric pair counts and unigram counts over all definitions.

    Pairs are stored once under their lexicographically sorted key;
    accessors present the symmetric view.
    """

    window: WindowSpec
    pairs: dict[tuple[str, str], int]
    unigram_counts: dict[str, int]
    total_tokens: int
    total_pairs: int
    _neighbors: dict[str, list[tuple[str, int]]] | None = field(
        default=None, repr=False, compare=False
    )
    _encoded: list = field(default_factory=list, repr=False, compare=False)

    def pair_count(self, w1: str, w2: str) -> int:
        if w1 > w2:
            w1, w2 = w2, w1
        return self.pairs.get((w1, w2), 0)

    def pair_items(self) -> list[tuple[tuple[str, str], int]]:
        return sorted(self.pairs.items())

    def cw(self, w1: str, w2: str, scheme: WeightScheme) -> float:
        """Cooccurrence weight between two words; 0 for unseen pairs."""
        scheme = WeightScheme(scheme)
        c = self.pair_count(w1, w2)
        if c == 0:
            return 0.0
        if scheme is WeightScheme.FREQUENCY:
            return float(c)
        n = float(self.total_tokens)
        f1 = float(self.unigram_counts[w1])
        f2 = float(self.unigram_counts[w2])
        base = math.log2((n * float(c)) / (f1 * f2))
        if scheme is WeightScheme.MUTUAL_INFORMATION:
            return max(base, 0.0)
        return max((float(c) / n) * base, 0.0)

    def neighbors(self, w: str) -> list[tuple[str, int]]:
        """Cooccurrers of w with raw counts, sorted by word."""
        if self._neighbors is None:
            adj: dict[str, list[tuple[str, int]]] = {}
            for (a, b), c in self.pair_items():
                adj.setdefault(a, []).append((b, c))
                adj.setdefault(b, []).append((a, c))
            for lst in adj.values():
                lst.sort()
            object.__setattr__(self, "_neighbors", adj)
        return self._neighbors.get(w, [])

    def civ(self, w: str, scheme: WeightScheme) -> dict[str, float]:
        """Cooccurrence information vector of w: cooccurrer -> weight."""
        return {u: self.cw(w, u, scheme) for u, _ in self.neighbors(w)}

    def top_associates(
        self, w: str, k: int, scheme: WeightScheme
    ) -> list[tuple[str, float, int]]:
        """Top-k cooccurrers by weight (descending; ties lexicographic)."""
        ranked = sorted(
            ((u, self.cw(w, u, scheme), c) for u, c in self.neighbors(w)),
            key=lambda t: (-t[1], t[0]),
        )
        return ranked[:k]

    def encoded(self) -> EncodedLexicon:
        if not self._encoded:
            self._encoded.append(EncodedLexicon(self))
        return self._encoded[0]


def build_lexicon(d: Dictionary, window: WindowSpec | None = None) -> CooccurrenceLexicon:
    """Count unigrams and per-definition word pairs over the whole dictionary.

    Stopwords and headwords are excluded; a pair of distinct words counts
    at most once per definition; self-pairs never count.
    """
    if window is None:
        window = WindowSpec.whole()
    word_lists = [content_words(d, s, include_headword=False) for s in d.senses]

    unigrams: dict[str, int] = {}
    for words in word_lists:
        for w in words:
            unigrams[w] = unigrams.get(w, 0) + 1
    vocab = sorted(unigrams)
    word_id = {w: i for i, w in enumerate(vocab)}

    tokens = np.array(
        [word_id[w] for words in word_lists for w in words], dtype=np.int64
    )
    offsets = np.zeros(len(word_lists) + 1, dtype=np.int64)
    np.cumsum([len(words) for words in word_lists], out=offsets[1:])

    n_vocab = max(len(vocab), 1)
    if window.size is None:
        keys = _kernels.def_pair_keys(offsets, tokens, n_vocab)
    else:
        keys = _kernels.window_pair_keys(offsets, tokens, n_vocab, window.size)
    uniq, counts = np.unique(keys, return_counts=True)

    pairs = {
        (vocab[int(k) // n_vocab], vocab[int(k) % n_vocab]): int(c)
        for k, c in zip(uniq, counts)
    }
    return CooccurrenceLexicon(
        window=window,
        pairs=pairs,
        unigram_counts=dict(sorted(unigrams.items())),
        total_tokens=int(offsets[-1]),
        total_pairs=int(counts.sum()),
    )


def save_lexicon(lexicon: CooccurrenceLexicon, path: str | Path) -> None:
    """Write the sorted round-trippable text form (see docs/formats.md)."""
    lines = [f"window\t{lexicon.window}", "#pairs"]
    lines.extend(f"{a}\t{b}\t{c}" for (a, b), c in lexicon.pair_items())
    lines.append("#unigrams")
    lines.extend(f"{w}\t{c}" for w, c in sorted(lexicon.unigram_counts.items()))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_lexicon(path: str | Path) -> CooccurrenceLexicon:
    pairs: dict[tuple[str, str], int] = {}
    unigrams: dict[str, int] = {}
    window = WindowSpec.whole()
    section = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("window\t"):
                window = WindowSpec.parse(line.split("\t", 1)[1])
            elif line == "#pairs":
                section = "pairs"
            elif line == "#unigrams":
                section = "unigrams"
            elif section == "pairs":
                a, b, c = line.split("\t")
                pairs[(a, b)] = int(c)
            elif section == "unigrams":
                w, c = line.split("\t")
                unigrams[w] = int(c)
            else:
                raise ValueError(f"{path}: line {lineno}: content outside any section")
    return CooccurrenceLexicon(
        window=window,
        pairs=pairs,
        unigram_counts=unigrams,
        total_tokens=sum(unigrams.values()),
        total_pairs=sum(pairs.values()),
    )
