"""Salient word vectors: per-word evidence weights toward 25 semantic files.

A word's weight for file t is max(0, log2(P(w|t) / P(w))), where P(w|t) is
the word's relative frequency inside definitions whose headword links to a
concept of file t, and P(w) its relative frequency over all definitions.
Words below a minimum overall frequency get a zero vector so singleton
counts cannot blow up the log ratio.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .dictionary import Dictionary, content_words
from .hierarchy import ConceptHierarchy, N_SEMANTIC_FILES
from .links import LinkTable, semantic_fields

DEFAULT_MIN_FREQ = 3


@dataclass(frozen=True)
class SalienceTable:
    """word -> 25-slot weight vector; words without a vector read as zero."""

    vectors: dict[str, np.ndarray]

    def get(self, word: str) -> np.ndarray | None:
        return self.vectors.get(word)

    def __len__(self) -> int:
        return len(self.vectors)


def build_salience(
    d: Dictionary,
    links: LinkTable,
    h: ConceptHierarchy,
    min_freq: int = DEFAULT_MIN_FREQ,
) -> SalienceTable:
    word_lists = [content_words(d, s, include_headword=False) for s in d.senses]
    vocab = sorted({w for words in word_lists for w in words})
    if not vocab:
        return SalienceTable({})
    word_id = {w: i for i, w in enumerate(vocab)}

    tokens = np.array(
        [word_id[w] for words in word_lists for w in words], dtype=np.int64
    )
    offsets = np.zeros(len(word_lists) + 1, dtype=np.int64)
    np.cumsum([len(words) for words in word_lists], out=offsets[1:])

    masks = np.zeros(len(d.senses), dtype=np.int64)
    for i, sense in enumerate(d.senses):
        bits = 0
        for t in semantic_fields(links, h, sense.headword):
            bits |= 1 << t
        masks[i] = bits

    counts, totals = _kernels.file_word_counts(
        offsets, tokens, masks, len(vocab), N_SEMANTIC_FILES
    )

    overall = np.zeros(len(vocab), dtype=np.float64)
    np.add.at(overall, tokens, 1.0)
    n_tokens = float(len(tokens))

    with np.errstate(divide="ignore", invalid="ignore"):
        p_w_t = counts / np.where(totals > 0, totals, 1).astype(np.float64)
        p_w = overall / n_tokens
        swv = np.log2(p_w_t / p_w[:, None])
    swv[counts == 0] = 0.0
    np.maximum(swv, 0.0, out=swv)
    swv[overall < min_freq, :] = 0.0

    vectors = {
        vocab[i]: swv[i].copy()
        for i in range(len(vocab))
        if np.any(swv[i] > 0.0)
    }
    return SalienceTable(vectors)


def save_salience(table: SalienceTable, path: str | Path) -> None:
    """Write `word TAB slot:weight,...` lines, nonzero slots only."""
    lines = []
    for word in sorted(table.vectors):
        vec = table.vectors[word]
        slots = ",".join(f"{t}:{float(vec[t])!r}" for t in np.nonzero(vec)[0])
        lines.append(f"{word}\t{slots}")
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def load_salience(path: str | Path) -> SalienceTable:
    vectors: dict[str, np.ndarray] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise ValueError(f"{path}: line {lineno}: expected `word TAB slots`")
            vec = np.zeros(N_SEMANTIC_FILES, dtype=np.float64)
            for part in fields[1].split(","):
                slot, _, weight = part.partition(":")
                vec[int(slot)] = float(weight)
            vectors[fields[0]] = vec
    return SalienceTable(vectors)
