"""Dictionary model: load, validate, and index a machine-readable dictionary.

The interchange format is one sense per line, UTF-8, tab-separated
(grammar in docs/formats.md):

    headword TAB sense_no TAB pos TAB domain TAB genus[,genus...] TAB token[|lemma] ...

Definitions arrive pre-tokenized; a token may carry a lemma after a pipe.
``-`` marks a missing pos or domain tag. The stopword file holds one lemma
per line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable


class DictionaryFormatError(ValueError):
    """Raised when a dictionary or stopword file violates the interchange format."""


def make_sense_key(headword: str, sense_no: int) -> str:
    return f"{headword}:{sense_no}"


def parse_sense_key(key: str) -> tuple[str, int]:
    headword, _, no = key.rpartition(":")
    if not headword or not no.isdigit():
        raise ValueError(f"malformed sense key: {key!r}")
    return headword, int(no)


@dataclass(frozen=True, slots=True)
class DictionarySense:
    """One dictionary definition with its pre-identified genus lemma(s)."""

    headword: str
    sense_no: int
    pos: str | None
    domain_tag: str | None
    tokens: tuple[str, ...]
    lemmas: tuple[str | None, ...]
    genus_lemmas: tuple[str, ...]

    @property
    def key(self) -> str:
        return make_sense_key(self.headword, self.sense_no)

    def words(self) -> tuple[str, ...]:
        """Lowercased lemma-or-surface form of every definition token."""
        return tuple(
            (lemma if lemma else token).lower()
            for token, lemma in zip(self.tokens, self.lemmas)
        )


@dataclass(frozen=True, slots=True)
class DictionaryStats:
    headword_count: int
    sense_count: int
    total_word_count: int
    avg_definition_length: float


@dataclass(frozen=True)
class Dictionary:
    """Immutable, fully indexed dictionary. Safe for concurrent readers."""

    senses: tuple[DictionarySense, ...]
    entry_index: dict[str, tuple[DictionarySense, ...]]
    stopwords: frozenset[str] = field(default_factory=frozenset)

    def lookup(self, headword: str) -> tuple[DictionarySense, ...]:
        """All senses of a headword, ordered by sense number."""
        return self.entry_index.get(headword, ())

    def sense(self, key: str) -> DictionarySense:
        headword, no = parse_sense_key(key)
        for s in self.lookup(headword):
            if s.sense_no == no:
                return s
        raise KeyError(key)

    def __len__(self) -> int:
        return len(self.senses)


def _parse_token(raw: str) -> tuple[str, str | None]:
    surface, sep, lemma = raw.partition("|")
    return surface, (lemma if sep and lemma else None)


def parse_sense_line(line: str, lineno: int) -> DictionarySense:
    fields = line.rstrip("\n").split("\t")
    if len(fields) != 6:
        raise DictionaryFormatError(
            f"line {lineno}: expected 6 tab-separated fields, got {len(fields)}"
        )
    headword, sense_no, pos, domain, genus, definition = fields
    if not headword:
        raise DictionaryFormatError(f"line {lineno}: empty headword")
    if not sense_no.isdigit() or int(sense_no) < 1:
        raise DictionaryFormatError(
            f"line {lineno}: sense number must be a positive integer, got {sense_no!r}"
        )
    genus_lemmas = tuple(g for g in genus.split(",") if g)
    if not genus_lemmas:
        raise DictionaryFormatError(f"line {lineno}: empty genus field")
    raw_tokens = definition.split() if definition else []
    parsed = [_parse_token(t) for t in raw_tokens]
    return DictionarySense(
        headword=headword,
        sense_no=int(sense_no),
        pos=pos if pos and pos != "-" else None,
        domain_tag=domain if domain and domain != "-" else None,
        tokens=tuple(t for t, _ in parsed),
        lemmas=tuple(l for _, l in parsed),
        genus_lemmas=genus_lemmas,
    )


def load_stopwords(path: str | Path) -> frozenset[str]:
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if word:
                words.add(word.lower())
    return frozenset(words)


def build_dictionary(
    senses: Iterable[DictionarySense], stopwords: frozenset[str] = frozenset()
) -> Dictionary:
    """Index and validate a sense collection (uniqueness, contiguous numbering)."""
    seen: dict[tuple[str, int], DictionarySense] = {}
    by_entry: dict[str, list[DictionarySense]] = {}
    for sense in senses:
        ident = (sense.headword, sense.sense_no)
        if ident in seen:
            raise DictionaryFormatError(
                f"duplicate sense ({sense.headword}, {sense.sense_no})"
            )
        seen[ident] = sense
        by_entry.setdefault(sense.headword, []).append(sense)
    entry_index: dict[str, tuple[DictionarySense, ...]] = {}
    for headword, entry in by_entry.items():
        entry.sort(key=lambda s: s.sense_no)
        numbers = [s.sense_no for s in entry]
        if numbers != list(range(1, len(entry) + 1)):
            raise DictionaryFormatError(
                f"entry {headword!r}: sense numbers {numbers} are not contiguous from 1"
            )
        entry_index[headword] = tuple(entry)
    ordered = tuple(s for entry in entry_index.values() for s in entry)
    return Dictionary(senses=ordered, entry_index=entry_index, stopwords=stopwords)


def load_dictionary(path: str | Path, stopword_path: str | Path | None = None) -> Dictionary:
    """Parse and validate a dictionary file; raises DictionaryFormatError on bad input."""
    stopwords = load_stopwords(stopword_path) if stopword_path else frozenset()
    senses = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            senses.append(parse_sense_line(line, lineno))
    return build_dictionary(senses, stopwords)


def genus_candidates(d: Dictionary, sense: DictionarySense) -> list[DictionarySense]:
    """All senses of the sense's genus lemmas sharing its part of speech.

    Candidates without a pos tag are retained; ordered by genus lemma
    position, then sense number. Empty when no genus lemma is a headword.
    """
    candidates = []
    for lemma in sense.genus_lemmas:
        for cand in d.lookup(lemma):
            if sense.pos is not None and cand.pos is not None and cand.pos != sense.pos:
                continue
            candidates.append(cand)
    return candidates


def content_words(
    d: Dictionary, sense: DictionarySense, include_headword: bool = False
) -> list[str]:
    """Definition words minus stopwords, multiset semantics.

    The headword is prepended when requested (it never survives the
    stopword filter, so the no-stopword invariant holds regardless).
    """
    words = [w for w in sense.words() if w not in d.stopwords]
    if include_headword:
        head = sense.headword.lower()
        if head not in d.stopwords:
            words.insert(0, head)
    return words


def compute_stats(d: Dictionary) -> DictionaryStats:
    total_words = sum(len(s.tokens) for s in d.senses)
    n_senses = len(d.senses)
    return DictionaryStats(
        headword_count=len(d.entry_index),
        sense_count=n_senses,
        total_word_count=total_words,
        avg_definition_length=total_words / n_senses if n_senses else 0.0,
    )
